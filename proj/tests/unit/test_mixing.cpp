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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "tripod/grid.hpp"
#include "tripod/mixing.hpp"

using namespace tripod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const GridSpec kGrid = make_grid(16, 1);

ComplexField2D uniform(cplx v) { return ComplexField2D(kGrid, v); }

ComplexField2D random_field(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  ComplexField2D f(kGrid);
  for (auto& v : f) v = {d(rng), d(rng)};
  return f;
}

MediumParams medium_with(double g) {
  MediumParams m;
  m.g_sqrt_n = g;
  return m;
}

// Explicit 3x3 matrix (E, Phi2, Phi3) -> (Phi_B, Phi_D1, Phi_D2) at one node.
using Mat3 = std::array<std::array<cplx, 3>, 3>;
Mat3 mixing_matrix(cplx x2, cplx x3, cplx z1, cplx zc) {
  return {{{z1, zc * x2, zc * x3},
           {zc, -std::conj(z1) * x2, -std::conj(z1) * x3},
           {0.0, std::conj(x3), -std::conj(x2)}}};
}

}  // namespace

TEST_CASE("mixing parameter examples") {
  const auto m = medium_with(4.0);
  auto mix = mixing_params(uniform(3.0), uniform(0.0), m);
  CHECK(mix.xi_c2[0] == cplx(1.0));
  CHECK(mix.xi_c3[0] == cplx(0.0));
  CHECK_THAT(mix.zeta_c[5].real(), WithinRel(0.6, 1e-15));
  CHECK_THAT(mix.zeta_1[5].real(), WithinRel(0.8, 1e-15));
  CHECK_THAT(mix.xi_total[5], WithinRel(5.0, 1e-15));
  CHECK_THAT(mix.omega_c[5], WithinRel(3.0, 1e-15));

  mix = mixing_params(uniform(2.0), uniform(2.0), m);
  CHECK_THAT(mix.xi_c2[0].real(), WithinRel(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(mix.xi_c3[0].real(), WithinRel(1.0 / std::sqrt(2.0), 1e-15));

  // dark node convention
  mix = mixing_params(uniform(0.0), uniform(0.0), m);
  CHECK(mix.dark_node_count() == kGrid.size());
  CHECK(mix.xi_c2[0] == cplx(1.0));
  CHECK(mix.xi_c3[0] == cplx(0.0));
  CHECK(mix.zeta_1[0] == cplx(1.0));
  CHECK(mix.zeta_c[0] == cplx(0.0));
}

TEST_CASE("mixing invariants on random controls") {
  std::mt19937_64 rng(11);
  const auto m = medium_with(1.7);
  for (int rep = 0; rep < 5; ++rep) {
    const auto mix = mixing_params(random_field(rng), random_field(rng), m);
    for (std::size_t k = 0; k < kGrid.size(); ++k) {
      CHECK_THAT(std::norm(mix.xi_c2[k]) + std::norm(mix.xi_c3[k]), WithinAbs(1.0, 1e-14));
      CHECK_THAT(std::norm(mix.zeta_1[k]) + std::norm(mix.zeta_c[k]), WithinAbs(1.0, 1e-14));
      CHECK_THAT(mix.xi_total[k] * mix.xi_total[k],
                 WithinRel(mix.omega_c[k] * mix.omega_c[k] + 1.7 * 1.7, 1e-14));
    }
  }
}

TEST_CASE("polariton map examples") {
  const auto m = medium_with(4.0);
  const auto mix = mixing_params(uniform({1.0, 2.0}), uniform(-2.0), m);
  const auto zero = uniform(0.0);
  auto pol = to_polaritons({zero, zero, zero}, mix);
  CHECK(max_abs(pol.phi_b) == 0.0);
  CHECK(max_abs(pol.phi_d1) == 0.0);
  CHECK(max_abs(pol.phi_d2) == 0.0);
  auto bare = from_polaritons({zero, zero, zero}, mix);
  CHECK(max_abs(bare.e_field) == 0.0);

  // probe only
  std::mt19937_64 rng(5);
  const auto e = random_field(rng);
  pol = to_polaritons({e, zero, zero}, mix);
  for (std::size_t k = 0; k < kGrid.size(); ++k) {
    CHECK(std::abs(pol.phi_d1[k] - mix.zeta_c[k] * e[k]) < 1e-15);
    CHECK(std::abs(pol.phi_b[k] - mix.zeta_1[k] * e[k]) < 1e-15);
    CHECK(pol.phi_d2[k] == cplx(0.0));
  }
  // E = zeta_c Phi_D1 when only the first polariton is populated
  const auto phi = random_field(rng);
  bare = from_polaritons({phi, zero, zero}, mix);
  for (std::size_t k = 0; k < kGrid.size(); ++k) {
    CHECK(std::abs(bare.e_field[k] - mix.zeta_c[k] * phi[k]) < 1e-15);
  }
}

TEST_CASE("polariton map is unitary and orthogonal") {
  std::mt19937_64 rng(23);
  const auto m = medium_with(0.9);
  for (int rep = 0; rep < 10; ++rep) {
    const auto mix = mixing_params(random_field(rng), random_field(rng), m);
    const BareState bare{random_field(rng), random_field(rng), random_field(rng)};
    const auto pol = to_polaritons(bare, mix);
    const auto back = from_polaritons(pol, mix);
    for (std::size_t k = 0; k < kGrid.size(); ++k) {
      const double in = std::norm(bare.e_field[k]) + std::norm(bare.phi_2[k]) + std::norm(bare.phi_3[k]);
      const double out = std::norm(pol.phi_b[k]) + std::norm(pol.phi_d1[k]) + std::norm(pol.phi_d2[k]);
      CHECK_THAT(out, WithinRel(in, 1e-12));
      CHECK(std::abs(back.e_field[k] - bare.e_field[k]) < 1e-12 * std::sqrt(in));
      CHECK(std::abs(back.phi_2[k] - bare.phi_2[k]) < 1e-12 * std::sqrt(in));
      CHECK(std::abs(back.phi_3[k] - bare.phi_3[k]) < 1e-12 * std::sqrt(in));

      // rows of the explicit matrix are orthonormal
      const auto mat = mixing_matrix(mix.xi_c2[k], mix.xi_c3[k], mix.zeta_1[k], mix.zeta_c[k]);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          cplx s = 0.0;
          for (int j = 0; j < 3; ++j) s += mat[r][j] * std::conj(mat[c][j]);
          CHECK(std::abs(s - (r == c ? 1.0 : 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("polariton maps reject mismatched grids") {
  const auto m = medium_with(1.0);
  const auto mix = mixing_params(uniform(1.0), uniform(0.0), m);
  const ComplexField2D other(make_grid(32, 1));
  try {
    to_polaritons({other, other, other}, mix);
    FAIL("expected grid_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_mismatch);
  }
  CHECK_THROWS_AS(from_polaritons({other, other, other}, mix), Error);
  CHECK_THROWS_AS(mixing_params(uniform(1.0), other, m), Error);
}

TEST_CASE("radiative velocity") {
  auto mix = mixing_params(uniform(2.0), uniform(0.0), medium_with(2.0));
  CHECK_THAT(radiative_velocity(mix, medium_with(2.0))[0], WithinRel(0.5, 1e-15));
  mix = mixing_params(uniform(3.0), uniform(0.0), medium_with(4.0));
  CHECK_THAT(radiative_velocity(mix, medium_with(4.0))[0], WithinRel(9.0 / 25.0, 1e-15));
  mix = mixing_params(uniform(1e-3), uniform(0.0), medium_with(1.0));
  CHECK_THAT(radiative_velocity(mix, medium_with(1.0))[0], WithinRel(1e-6, 1e-5));

  // monotone in Omega_c
  double last = -1.0;
  for (double oc = 0.0; oc < 10.0; oc += 0.25) {
    const auto mx = mixing_params(uniform(oc), uniform(0.0), medium_with(2.0));
    const double v = radiative_velocity(mx, medium_with(2.0))[0];
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("effective mass") {
  MediumParams m = medium_with(1.0);
  m.recoil_frequency = 1e-3;
  m.optical_frequency = 5e7;
  // no atoms: photon mass m_photon / m = 2 omega_rec / omega
  m.g_sqrt_n = 1e-300;
  auto mix = mixing_params(uniform(1.0), uniform(0.0), m);
  CHECK_THAT(effective_mass_d1(mix, m)[0], WithinRel(2e-3 / 5e7, 1e-12));

  // slow light: m_D1 / m = v_rec / v_rad, with v_rad = 1000 v_rec
  const double c = m.speed_of_light();
  const double v_rec = 2.0 * m.recoil_frequency / (2.0 * std::numbers::pi);
  const double v_rad = 1000.0 * v_rec;
  m.g_sqrt_n = 1.0;
  const double oc = std::sqrt(v_rad / c / (1.0 - v_rad / c));  // Omega^2 / (Omega^2 + 1) = v_rad / c
  mix = mixing_params(uniform(oc), uniform(0.0), m);
  CHECK_THAT(radiative_velocity(mix, m)[0] * c, WithinRel(v_rad, 1e-12));
  CHECK_THAT(effective_mass_d1(mix, m)[0], WithinRel(1e-3, 2e-3));

  m.recoil_frequency = 0.0;
  CHECK_THROWS_AS(effective_mass_d1(mix, m), Error);
}

TEST_CASE("group velocity") {
  MediumParams m = medium_with(3.0);
  m.recoil_frequency = 0.5;
  m.optical_frequency = 40.0;
  auto mix = mixing_params(uniform(1.0), uniform(0.5), m);
  const auto vr = radiative_velocity(mix, m);

  auto gv = group_velocity_d1(mix, m);
  CHECK(gv.v_g1[0] == vr[0]);
  CHECK(gv.max_recoil_ratio == 0.0);
  CHECK(gv.recoil_negligible);

  m.k = 1.05;
  gv = group_velocity_d1(mix, m);
  const double expect = vr[0] + 2.0 * m.recoil_frequency / m.optical_frequency * 0.05 *
                                    std::norm(mix.zeta_1[0]);
  CHECK_THAT(gv.v_g1[0], WithinRel(expect, 1e-13));
  CHECK_FALSE(gv.recoil_negligible);

  // no atoms: v_g1 = v_rad = 1
  m.g_sqrt_n = 1e-300;
  mix = mixing_params(uniform(1.0), uniform(0.0), m);
  gv = group_velocity_d1(mix, m);
  CHECK_THAT(gv.v_g1[0], WithinRel(1.0, 1e-15));

  // v_rad = 10 m/s with a 1 cm/s recoil velocity and k - k_c = 1e-3 k
  MediumParams p;
  p.optical_frequency = 5e7;
  const double c = p.speed_of_light();
  const double v_rad = 10.0 / 37.0;
  p.recoil_frequency = 2.0 * std::numbers::pi * (0.01 / 37.0) / 2.0;
  p.g_sqrt_n = 1.0;
  p.k = 1.0 + 1e-3;
  const double oc = std::sqrt(v_rad / c / (1.0 - v_rad / c));
  mix = mixing_params(uniform(oc), uniform(0.0), p);
  gv = group_velocity_d1(mix, p);
  CHECK(gv.max_recoil_ratio <= 1e-3);
  CHECK(gv.recoil_negligible);
}
