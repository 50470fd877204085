// Copyright 2026 The tripod-polariton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Classical RK4 in time for the coupled dark-polariton pair, used as the
// reference for the split-step integrator. Matrices are reassembled at
// every stage time; derivatives are the spectral ones from the grid module.
// Only meant for small grids and many small steps.

#pragma once

#include <array>
#include <complex>

#include "tripod/coupling.hpp"
#include "tripod/grid.hpp"
#include "tripod/mixing.hpp"

namespace reference {

using tripod::ComplexField2D;
using tripod::cplx;
using Pair = std::array<ComplexField2D, 2>;

// -i H Phi with
//   (H Phi)_a = -1/2 K_a lap Phi_a + i sum_b J_ab . grad Phi_b + sum_b U_ab Phi_b
inline Pair rhs(const tripod::ControlPair& controls,
                const tripod::MediumParams& medium, double t, double z,
                const Pair& phi) {
  const auto mix = tripod::mixing_params(controls, medium, t);
  const auto m = tripod::assemble_paraxial_matrices(controls, mix, medium, t, z);
  const auto k1 = tripod::kinetic_coefficient_d1(mix, medium);
  const double k2 = medium.atom_diffusion();
  const auto& grid = controls.grid();

  const tripod::Gradient g[2] = {tripod::gradient(phi[0]), tripod::gradient(phi[1])};
  const ComplexField2D lap[2] = {tripod::laplacian_transverse(phi[0]),
                                 tripod::laplacian_transverse(phi[1])};
  const tripod::VectorField* js[4] = {&m.j11, &m.j12, &m.j21, &m.j22};
  const ComplexField2D* us[4] = {&m.u11, &m.u12, &m.u21, &m.u22};
  const cplx I{0.0, 1.0};

  Pair out{ComplexField2D(grid), ComplexField2D(grid)};
  for (std::size_t n = 0; n < grid.size(); ++n) {
    for (int a = 0; a < 2; ++a) {
      const double kin = a == 0 ? k1[n] : k2;
      cplx h = -0.5 * kin * lap[a][n];
      for (int b = 0; b < 2; ++b) {
        const auto& j = *js[a * 2 + b];
        h += I * (j.x[n] * g[b].x[n] + j.y[n] * g[b].y[n]);
        h += (*us[a * 2 + b])[n] * phi[b][n];
      }
      out[a][n] = -I * h;
    }
  }
  return out;
}

inline Pair axpy(const Pair& x, double h, const Pair& k) {
  Pair out = x;
  for (int a = 0; a < 2; ++a) {
    for (std::size_t n = 0; n < x[a].size(); ++n) out[a][n] += h * k[a][n];
  }
  return out;
}

inline Pair integrate(const tripod::ControlPair& controls,
                      const tripod::MediumParams& medium, Pair phi, double t0,
                      double t1, int steps, double z = 0.0) {
  const double h = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const auto k1 = rhs(controls, medium, t, z, phi);
    const auto k2 = rhs(controls, medium, t + 0.5 * h, z, axpy(phi, 0.5 * h, k1));
    const auto k3 = rhs(controls, medium, t + 0.5 * h, z, axpy(phi, 0.5 * h, k2));
    const auto k4 = rhs(controls, medium, t + h, z, axpy(phi, h, k3));
    for (int a = 0; a < 2; ++a) {
      for (std::size_t n = 0; n < phi[a].size(); ++n) {
        phi[a][n] += h / 6.0 * (k1[a][n] + 2.0 * k2[a][n] + 2.0 * k3[a][n] + k4[a][n]);
      }
    }
  }
  return phi;
}

}  // namespace reference
