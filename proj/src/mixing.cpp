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

#include "tripod/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace tripod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::invalid_argument, message);
}

}  // namespace

void MediumParams::validate() const {
  require(g_sqrt_n > 0.0 && std::isfinite(g_sqrt_n), "g_sqrt_n must be > 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  require(k > 0.0, "k must be > 0");
  require(k_c > 0.0, "k_c must be > 0");
  require(optical_frequency > 0.0, "optical_frequency must be > 0");
  require(recoil_frequency >= 0.0, "recoil_frequency must be >= 0");
  require(std::isfinite(omega01) && std::isfinite(omega21) &&
              std::isfinite(omega31),
          "detunings must be finite");
  const GridSpec* ref = density ? &density->grid() : nullptr;
  if (density) {
    for (double v : *density) {
      require(v >= 0.0 && std::isfinite(v), "density must be finite and >= 0");
    }
  }
  for (const auto& v : potentials) {
    if (!v) continue;
    if (ref) require_same_grid(*ref, v->grid(), "medium potentials");
    ref = &v->grid();
    for (double x : *v) require(std::isfinite(x), "potentials must be finite");
  }
}

double MediumParams::atom_diffusion() const noexcept {
  return 2.0 * recoil_frequency / (kTwoPi * kTwoPi);
}

double MediumParams::photon_diffusion() const noexcept {
  return optical_frequency / (kTwoPi * kTwoPi);
}

double MediumParams::speed_of_light() const noexcept {
  return optical_frequency / kTwoPi;
}

RealField2D MediumParams::potential(int j, const GridSpec& grid) const {
  if (j < 0 || j > 3) {
    throw Error(ErrorCode::invalid_argument, "potential index must be 0..3");
  }
  const auto& v = potentials[static_cast<std::size_t>(j)];
  if (!v) return RealField2D(grid, 0.0);
  require_same_grid(v->grid(), grid, "medium potential");
  return *v;
}

RealField2D MediumParams::coupling(const GridSpec& grid) const {
  if (!density) return RealField2D(grid, g_sqrt_n);
  require_same_grid(density->grid(), grid, "medium density");
  RealField2D out(grid);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = g_sqrt_n * std::sqrt((*density)[k]);
  }
  return out;
}

std::size_t MixingParams::dark_node_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(dark_nodes.begin(), dark_nodes.end(), std::uint8_t{1}));
}

MixingParams mixing_params(const ComplexField2D& omega_c2,
                           const ComplexField2D& omega_c3,
                           const MediumParams& medium) {
  require_same_grid(omega_c2.grid(), omega_c3.grid(), "mixing_params");
  const auto& grid = omega_c2.grid();
  const auto coupling = medium.coupling(grid);

  MixingParams mix{ComplexField2D(grid), ComplexField2D(grid),
                   ComplexField2D(grid), ComplexField2D(grid),
                   RealField2D(grid),    RealField2D(grid),
                   std::vector<std::uint8_t>(grid.size(), 0)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double oc = std::hypot(std::abs(omega_c2[k]), std::abs(omega_c3[k]));
    const double g = coupling[k];
    const double xi = std::hypot(oc, g);
    mix.omega_c[k] = oc;
    mix.xi_total[k] = xi;
    if (oc > 0.0) {
      mix.xi_c2[k] = omega_c2[k] / oc;
      mix.xi_c3[k] = omega_c3[k] / oc;
    } else {
      mix.xi_c2[k] = 1.0;
      mix.xi_c3[k] = 0.0;
      mix.dark_nodes[k] = 1;
    }
    if (xi > 0.0) {
      mix.zeta_1[k] = g / xi;
      mix.zeta_c[k] = oc / xi;
    } else {
      // no atoms and no control: the polariton is pure light
      mix.zeta_1[k] = 0.0;
      mix.zeta_c[k] = 1.0;
    }
  }
  return mix;
}

PolaritonState to_polaritons(const BareState& bare, const MixingParams& mix) {
  const auto& grid = mix.grid();
  require_same_grid(bare.e_field.grid(), grid, "to_polaritons");
  require_same_grid(bare.phi_2.grid(), grid, "to_polaritons");
  require_same_grid(bare.phi_3.grid(), grid, "to_polaritons");

  PolaritonState pol{ComplexField2D(grid), ComplexField2D(grid),
                     ComplexField2D(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx x2 = mix.xi_c2[k];
    const cplx x3 = mix.xi_c3[k];
    const cplx z1 = mix.zeta_1[k];
    const cplx zc = mix.zeta_c[k];
    const cplx lambda_bright = x2 * bare.phi_2[k] + x3 * bare.phi_3[k];
    pol.phi_b[k] = zc * lambda_bright + z1 * bare.e_field[k];
    pol.phi_d1[k] = zc * bare.e_field[k] - std::conj(z1) * lambda_bright;
    pol.phi_d2[k] = std::conj(x3) * bare.phi_2[k] - std::conj(x2) * bare.phi_3[k];
  }
  return pol;
}

BareState from_polaritons(const PolaritonState& pol, const MixingParams& mix) {
  const auto& grid = mix.grid();
  require_same_grid(pol.phi_d1.grid(), grid, "from_polaritons");
  require_same_grid(pol.phi_d2.grid(), grid, "from_polaritons");
  require_same_grid(pol.phi_b.grid(), grid, "from_polaritons");

  BareState bare{ComplexField2D(grid), ComplexField2D(grid),
                 ComplexField2D(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx x2 = mix.xi_c2[k];
    const cplx x3 = mix.xi_c3[k];
    const cplx z1 = mix.zeta_1[k];
    const cplx zc = mix.zeta_c[k];
    const cplx atomic = zc * pol.phi_b[k] - z1 * pol.phi_d1[k];
    bare.phi_2[k] = std::conj(x2) * atomic + x3 * pol.phi_d2[k];
    bare.phi_3[k] = std::conj(x3) * atomic - x2 * pol.phi_d2[k];
    bare.e_field[k] = std::conj(z1) * pol.phi_b[k] + zc * pol.phi_d1[k];
  }
  return bare;
}

RealField2D radiative_velocity(const MixingParams& mix,
                               const MediumParams& medium) {
  const auto coupling = medium.coupling(mix.grid());
  RealField2D out(mix.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double oc2 = mix.omega_c[k] * mix.omega_c[k];
    const double denom = oc2 + coupling[k] * coupling[k];
    out[k] = denom > 0.0 ? oc2 / denom : 1.0;
  }
  return out;
}

RealField2D effective_mass_d1(const MixingParams& mix,
                              const MediumParams& medium) {
  if (!(medium.recoil_frequency > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "effective mass needs a positive recoil frequency");
  }
  // 1/m_D1 = |zeta_c|^2 / m_photon + |zeta_1|^2 / m, and
  // m / m_photon = omega / (2 omega_rec).
  const double photon_over_atom = medium.optical_frequency /
                                  (2.0 * medium.recoil_frequency);
  RealField2D out(mix.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = 1.0 / (std::norm(mix.zeta_c[k]) * photon_over_atom +
                    std::norm(mix.zeta_1[k]));
  }
  return out;
}

RealField2D kinetic_coefficient_d1(const MixingParams& mix,
                                   const MediumParams& medium) {
  const double photon = medium.photon_diffusion();
  const double atom = medium.atom_diffusion();
  RealField2D out(mix.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = photon * std::norm(mix.zeta_c[k]) + atom * std::norm(mix.zeta_1[k]);
  }
  return out;
}

GroupVelocity group_velocity_d1(const MixingParams& mix,
                                const MediumParams& medium) {
  const auto v_rad = radiative_velocity(mix, medium);
  // hbar (k - k_c) / m over c equals (v_rec / c)(k - k_c) with
  // v_rec / c = 2 omega_rec / omega.
  const double recoil_speed =
      2.0 * medium.recoil_frequency / medium.optical_frequency *
      (medium.k - medium.k_c);
  GroupVelocity gv{RealField2D(mix.grid()), RealField2D(mix.grid()), 0.0, true};
  for (std::size_t k = 0; k < v_rad.size(); ++k) {
    const double recoil = recoil_speed * std::norm(mix.zeta_1[k]);
    gv.recoil_term[k] = recoil;
    gv.v_g1[k] = v_rad[k] + recoil;
    if (v_rad[k] > 0.0) {
      gv.max_recoil_ratio =
          std::max(gv.max_recoil_ratio, std::abs(recoil) / v_rad[k]);
    } else if (recoil != 0.0) {
      gv.max_recoil_ratio = std::numeric_limits<double>::infinity();
    }
  }
  gv.recoil_negligible = gv.max_recoil_ratio <= 1e-3;
  return gv;
}

}  // namespace tripod
