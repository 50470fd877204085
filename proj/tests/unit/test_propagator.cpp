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

#include "matrix_oracle.hpp"
#include "reference_integrator.hpp"
#include "tripod/beams.hpp"
#include "tripod/memory_protocol.hpp"
#include "tripod/propagator.hpp"

using namespace tripod;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const ComplexField2D& a, const ComplexField2D& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

PropagationPlan free_plan(double z_end, int n, int every = 1) {
  return {0.0, z_end, n, every, PropagationMode::free_space};
}

// Paraxial Gaussian e^{-rho^2 / s^2} after a distance z with z_R = pi s^2.
ComplexField2D gaussian_at(const GridSpec& g, double s, double z) {
  const cplx q = 1.0 + cplx(0.0, z / (kPi * s * s));
  return sample(g, [&](double x, double y) { return std::exp(-(x * x + y * y) / (s * s * q)) / q; });
}

ControlPair uniform_controls(const GridSpec& g, cplx a2, cplx a3) {
  ControlPair c;
  c.profile_c2 = ComplexField2D(g, a2);
  c.profile_c3 = ComplexField2D(g, a3);
  return c;
}

double pair_norm(const ComplexField2D& a, const ComplexField2D& b) {
  return norm_sq(a) + norm_sq(b);
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(free_plan(0.0, 4).validate(), Error);
  CHECK_THROWS_AS(free_plan(1.0, 0).validate(), Error);
  CHECK_THROWS_AS(free_plan(1.0, 4, 0).validate(), Error);
  CHECK_NOTHROW(free_plan(1.0, 4).validate());
  CHECK(free_plan(2.0, 8).dz() == 0.25);
  const auto g = make_grid(16, 4);
  auto plan = free_plan(1.0, 2);
  plan.mode = PropagationMode::in_medium_coupled;
  CHECK_THROWS_AS(propagate_free_space(ComplexField2D(g, 1.0), plan), Error);
}

TEST_CASE("free space: vanishing step is the identity") {
  const auto g = make_grid(64, 20);
  const auto f = render_beam(BeamSpec::laguerre_gauss(1.0, 5.0, 1), g);
  const auto out = propagate_free_space(f, free_plan(1e-300, 1));
  REQUIRE(out.size() == 2);
  CHECK(out[0].z == 0.0);
  CHECK(max_diff(out[0].field, f) == 0.0);
  CHECK(max_diff(out[1].field, f) < 1e-14);
}

TEST_CASE("free space: recording schedule") {
  const auto g = make_grid(16, 4);
  const auto f = render_beam(BeamSpec::gaussian(1.0, 1.0), g);
  const auto out = propagate_free_space(f, free_plan(1.0, 10, 4));
  REQUIRE(out.size() == 4);  // 0, 4, 8, 10
  CHECK_THAT(out[1].z, WithinAbs(0.4, 1e-15));
  CHECK_THAT(out[3].z, WithinAbs(1.0, 1e-15));
}

TEST_CASE("free space: Gaussian follows the paraxial solution") {
  const double s = 5.0, zr = kPi * s * s;
  const auto g = make_grid(256, 48);
  const auto f = gaussian_at(g, s, 0.0);
  const auto out = propagate_free_space(f, free_plan(2 * zr, 40, 5));
  for (const auto& sl : out) {
    INFO("z / z_R = " << sl.z / zr);
    const double w = s * std::sqrt(1.0 + sl.z * sl.z / (zr * zr));
    CHECK_THAT(rms_radius(sl.field), WithinRel(w / std::sqrt(2.0), 1e-3));
    CHECK(max_diff(sl.field, gaussian_at(g, s, sl.z)) < 1e-6);
  }
}

TEST_CASE("free space: vortices keep their charge") {
  const auto g = make_grid(256, 80);
  for (int l = -2; l <= 2; ++l) {
    const auto spec = l == 0 ? BeamSpec::gaussian(1.0, 10.0) : BeamSpec::laguerre_gauss(1.0, 10.0, l);
    const auto out = propagate_free_space(render_beam(spec, g), free_plan(2 * kPi * 100, 16, 2));
    double last = 0.0;
    for (const auto& sl : out) {
      INFO("l " << l << " z " << sl.z);
      CHECK(vortex_charge(sl.field, std::max(5.0, 0.5 * rms_radius(sl.field))) == l);
      const double r = rms_radius(sl.field);
      if (sl.z > 0.0) CHECK(r > last);
      last = r;
    }
  }
}

TEST_CASE("free space: each step is unitary") {
  const auto g = make_grid(64, 10);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> d;
  ComplexField2D f(g);
  for (auto& v : f) v = {d(rng), d(rng)};
  const auto out = propagate_free_space(f, free_plan(30.0, 50));
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double a = norm_sq(out[k - 1].field), b = norm_sq(out[k].field);
    CHECK(std::abs(b - a) <= 1e-13 * a);
  }
}

TEST_CASE("expm2x2") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  for (int rep = 0; rep < 50; ++rep) {
    const double scale = std::pow(10.0, rep % 5 - 2);
    Matrix2 a;
    for (auto& v : a) v = scale * cplx(d(rng), d(rng));
    // Cayley-Hamilton closed form
    const cplx half_tr = 0.5 * (a[0] + a[3]);
    const cplx s = std::sqrt(0.25 * (a[0] - a[3]) * (a[0] - a[3]) + a[1] * a[2]);
    const cplx ch = std::cosh(s);
    const cplx sh = std::abs(s) > 1e-8 ? std::sinh(s) / s : 1.0 + s * s / 6.0;
    const cplx e = std::exp(half_tr);
    const Matrix2 expect{e * (ch + sh * (a[0] - half_tr)), e * sh * a[1], e * sh * a[2],
                         e * (ch + sh * (a[3] - half_tr))};
    const auto got = expm2x2(a);
    double mag = 0.0;
    for (const auto& v : expect) mag = std::max(mag, std::abs(v));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - expect[k]) <= 1e-12 * mag);
  }
  // anti-Hermitian input gives a unitary result
  const Matrix2 h{cplx(0, 0.7), cplx(0.3, 1.1), cplx(-0.3, 1.1), cplx(0, -2.0)};
  const auto u = expm2x2(h);
  CHECK(std::abs(std::norm(u[0]) + std::norm(u[2]) - 1.0) < 1e-14);
  CHECK(std::abs(u[0] * std::conj(u[1]) + u[2] * std::conj(u[3])) < 1e-14);
}

TEST_CASE("decoupled: uniform medium reduces to free-space diffraction") {
  const auto g = make_grid(128, 40);
  MediumParams md;
  md.g_sqrt_n = 3.0;
  md.recoil_frequency = 0.2;
  md.optical_frequency = 20.0;
  const auto c = uniform_controls(g, 1.0, 0.5);
  const auto mix = mixing_params(c, md, 0.0);
  const auto m = assemble_paraxial_matrices(c, mix, md, 0.0);
  const auto phi = render_beam(BeamSpec::laguerre_gauss(1.0, 6.0, 1), g);
  const PropagationPlan plan{0.0, 150.0, 30, 10, PropagationMode::in_medium_decoupled};
  const auto out = propagate_polariton_decoupled(phi, mix, md, m, plan);
  const double kin = kinetic_coefficient_d1(mix, md)[0];
  const double v = reference_velocity(phi, mix, md);
  for (const auto& sl : out) {
    CHECK_THAT(sl.t, WithinRel(sl.z / v, 1e-12));
    if (sl.z == 0.0) continue;
    const double z_free = 2.0 * kPi * kin * sl.t;
    const auto ref = propagate_free_space(phi, free_plan(z_free, 1));
    CHECK(max_diff(sl.field, ref.back().field) <= 1e-10);
  }
}

TEST_CASE("decoupled: advection only") {
  const auto g = make_grid(64, 20);
  MediumParams md;
  md.g_sqrt_n = 4.0;
  md.optical_frequency = 30.0;
  const auto c = uniform_controls(g, 2.0, 0.0);
  const auto mix = mixing_params(c, md, 0.0);
  const auto m = assemble_paraxial_matrices(c, mix, md, 0.0);
  const auto phi = render_beam(BeamSpec::laguerre_gauss(1.0, 4.0, -1), g);
  const PropagationPlan plan{10.0, 40.0, 12, 3, PropagationMode::in_medium_decoupled};
  const auto out = propagate_polariton_decoupled(phi, mix, md, m, plan, {false});
  const double v = group_velocity_d1(mix, md).v_g1[0] * md.speed_of_light();
  for (const auto& sl : out) {
    CHECK(max_diff(sl.field, phi) == 0.0);  // nothing but the frame moves
    CHECK_THAT(sl.t, WithinAbs((sl.z - 10.0) / v, 1e-12));
  }

  // the same velocity moves the center of mass of a temporal pulse
  TimeSeries in;
  in.dt = 0.05;
  for (int k = 0; k < 800; ++k) {
    const double t = k * in.dt;
    in.frames.push_back(ComplexField2D(g, std::exp(-(t - 6.0) * (t - 6.0))));
  }
  const double z = 25.0 * v;
  const auto moved = transport_probe_in_medium(in, {RealField2D(g, v), RealField2D(g, v)}, z);
  auto centre = [](const TimeSeries& s) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < s.frames.size(); ++k) {
      const double w = std::norm(s.frames[k][0]);
      num += w * (s.t0 + k * s.dt);
      den += w;
    }
    return num / den;
  };
  const double speed = z / (centre(moved) - centre(in));
  CHECK_THAT(speed, WithinRel(v, 1e-3));
}

TEST_CASE("decoupled: norm with real potentials") {
  const auto g = make_grid(64, 16);
  MediumParams md;
  md.g_sqrt_n = 2.0;
  md.recoil_frequency = 0.5;
  md.optical_frequency = 20.0;
  md.omega21 = 0.2;
  md.potentials[2] = sample<double>(g, [](double x, double y) { return 0.05 * (x * x + y * y) / 64.0; });
  md.potentials[3] = sample<double>(g, [](double x, double) { return 0.3 * std::sin(kPi * x / 16.0); });
  const auto c = uniform_controls(g, 1.0, cplx(0.4, 0.3));
  const auto mix = mixing_params(c, md, 0.0);
  const auto m = assemble_paraxial_matrices(c, mix, md, 0.0);
  const auto phi = render_beam(BeamSpec::laguerre_gauss(1.0, 4.0, 1), g);
  const PropagationPlan plan{0.0, 500.0, 1000, 1000, PropagationMode::in_medium_decoupled};
  const auto out = propagate_polariton_decoupled(phi, mix, md, m, plan);
  CHECK(std::abs(norm_sq(out.back().field) / norm_sq(phi) - 1.0) <= 1e-8);
  CHECK(max_diff(out.back().field, phi) > 1e-3);  // something did happen
}

TEST_CASE("decoupled: input validation") {
  const auto g = make_grid(16, 4);
  MediumParams md;
  const auto c = uniform_controls(g, 1.0, 0.0);
  const auto mix = mixing_params(c, md, 0.0);
  const auto m = assemble_paraxial_matrices(c, mix, md, 0.0);
  PropagationPlan plan{0.0, 1.0, 2, 1, PropagationMode::free_space};
  CHECK_THROWS_AS(propagate_polariton_decoupled(ComplexField2D(g, 1.0), mix, md, m, plan), Error);
  plan.mode = PropagationMode::in_medium_decoupled;
  CHECK_THROWS_AS(propagate_polariton_decoupled(ComplexField2D(make_grid(32, 4), 1.0), mix, md, m, plan),
                  Error);
  // no control field, no propagation
  const auto dark = mixing_params(uniform_controls(g, 0.0, 0.0), md, 0.0);
  CHECK_THROWS_AS(reference_velocity(ComplexField2D(g, 1.0), dark, md), Error);
}

TEST_CASE("decoupled: complex potentials skip the growth check") {
  // gain from an imaginary U is physical input, not an instability
  const auto g = make_grid(16, 4);
  MediumParams md;
  md.g_sqrt_n = 1e3;
  const auto c = uniform_controls(g, 1.0, 0.0);
  const auto mix = mixing_params(c, md, 0.0);
  auto m = assemble_paraxial_matrices(c, mix, md, 0.0);
  for (auto& v : m.u11) v = cplx(0.0, 1e-3);
  const PropagationPlan plan{0.0, 1.0, 4, 1, PropagationMode::in_medium_decoupled};
  const auto out = propagate_polariton_decoupled(ComplexField2D(g, 1.0), mix, md, m, plan);
  CHECK(norm_sq(out.back().field) > norm_sq(out.front().field));
}

TEST_CASE("coupled: shared envelopes leave the second polariton empty") {
  const auto g = make_grid(32, 10);
  MediumParams md;
  md.g_sqrt_n = 2.0;
  md.recoil_frequency = 0.5;
  md.optical_frequency = 20.0;
  auto c = uniform_controls(g, cplx(0.8, 0.1), cplx(0.3, -0.5));
  c.envelope_c2 = c.envelope_c3 = Envelope::ramp(0.0, 6.0, 1.0, 0.3);
  const PolaritonPair st{render_beam(BeamSpec::laguerre_gauss(1.0, 3.0, 1), g), ComplexField2D(g)};
  const PropagationPlan plan{0.0, 8.0, 40, 10, PropagationMode::in_medium_coupled};
  const auto out = propagate_polariton_coupled(st, c, md, plan);
  for (const auto& sl : out) CHECK(max_abs(sl.phi_d2) == 0.0);
  CHECK(out.back().t > 0.0);
}

TEST_CASE("coupled: smooth shared controls keep the cross population small") {
  const double extent = 8.0;
  const auto g = make_grid(32, extent);
  auto s = oracle::random_setup(31, extent);
  s.medium.omega21 = s.medium.omega31 = 0.0;
  s.v2 = s.v3 = [](double, double) { return 0.0; };
  s.f2 = s.f3 = {0.0, 4.0, 1.0, 0.5, 1};
  const auto c = s.controls(g);
  const auto md = s.medium_on(g);
  const PolaritonPair st{render_beam(BeamSpec::gaussian(1.0, 2.5), g), ComplexField2D(g)};
  const PropagationPlan plan{0.0, 3.0, 60, 60, PropagationMode::in_medium_coupled};
  const auto out = propagate_polariton_coupled(st, c, md, plan);
  // |U12'| t bounds the transferred amplitude
  double u12 = 0.0, j12 = 0.0;
  for (double t : {0.0, out.back().t}) {
    const auto m = assemble_paraxial_matrices(c, mixing_params(c, md, t), md, t);
    u12 = std::max(u12, max_abs(m.u12));
    j12 = std::max({j12, max_abs(m.j12.x), max_abs(m.j12.y)});
  }
  const auto grad = gradient(st.phi_d1);
  const double bound = out.back().t * (u12 * std::sqrt(norm_sq(st.phi_d1)) +
                                       2.0 * j12 * std::sqrt(norm_sq(grad.x) + norm_sq(grad.y)));
  CHECK(std::sqrt(norm_sq(out.back().phi_d2)) <= bound);
  CHECK(max_abs(out.back().phi_d2) > 0.0);
}

TEST_CASE("coupled: Hermitian generator conserves the column norm") {
  const auto g = make_grid(64, 16);
  MediumParams md;
  md.g_sqrt_n = 2.0;
  md.recoil_frequency = 0.5;
  md.optical_frequency = 20.0;
  md.omega21 = 0.1;
  md.omega31 = -0.05;
  md.potentials[2] = sample<double>(g, [](double x, double y) { return 0.2 * std::cos(kPi * (x + y) / 16.0); });
  md.potentials[3] = sample<double>(g, [](double x, double) { return 0.1 * std::sin(kPi * x / 16.0); });
  const auto c = uniform_controls(g, 1.0, cplx(0.5, 0.5));
  const PolaritonPair st{render_beam(BeamSpec::laguerre_gauss(1.0, 4.0, 1), g), ComplexField2D(g)};
  const PropagationPlan plan{0.0, 1000.0, 1000, 1000, PropagationMode::in_medium_coupled};
  const auto out = propagate_polariton_coupled(st, c, md, plan);
  const double n0 = pair_norm(st.phi_d1, st.phi_d2);
  CHECK(std::abs(pair_norm(out.back().phi_d1, out.back().phi_d2) / n0 - 1.0) <= 1e-8);
  CHECK(norm_sq(out.back().phi_d2) > 1e-4 * n0);  // the potentials do mix the pair
}

namespace {

struct CoupledCase {
  GridSpec grid;
  oracle::AnalyticSetup setup;
  ControlPair controls;
  MediumParams medium;
  PolaritonPair state;
};

CoupledCase mismatched_case(int power, int n = 32) {
  const double extent = 8.0;
  CoupledCase cc;
  cc.grid = make_grid(n, extent);
  cc.setup = oracle::random_setup(77, extent);
  cc.setup.medium.k_c = cc.setup.medium.k;
  cc.setup.f2 = {0.0, 3.0, 1.0, 0.4, 1};
  cc.setup.f3 = {0.0, 3.0, 1.0, 0.4, power};
  cc.controls = cc.setup.controls(cc.grid);
  cc.medium = cc.setup.medium_on(cc.grid);
  cc.state = {render_beam(BeamSpec::gaussian(1.0, 2.5), cc.grid), ComplexField2D(cc.grid)};
  return cc;
}

double pair_error(const PairSlice& sl, const reference::Pair& ref) {
  return std::max(max_diff(sl.phi_d1, ref[0]), max_diff(sl.phi_d2, ref[1]));
}

}  // namespace

TEST_CASE("coupled: mismatched envelopes transfer population") {
  double last = 0.0;
  for (int power : {1, 2, 3}) {
    auto cc = mismatched_case(power);
    const PropagationPlan plan{0.0, 4.0, 200, 200, PropagationMode::in_medium_coupled};
    const auto out = propagate_polariton_coupled(cc.state, cc.controls, cc.medium, plan);
    const double transfer = norm_sq(out.back().phi_d2) / norm_sq(cc.state.phi_d1);
    INFO("power " << power << " transfer " << transfer);
    CHECK(transfer > last);
    last = transfer;

    if (power == 2) {
      const auto ref = reference::integrate(cc.controls, cc.medium,
                                            {cc.state.phi_d1, cc.state.phi_d2}, 0.0,
                                            out.back().t, 4000);
      CHECK(pair_error(out.back(), ref) <= 1e-6 * max_abs(cc.state.phi_d1));
    }
  }
}

TEST_CASE("coupled: second order in the step") {
  auto cc = mismatched_case(2);
  std::vector<double> errors;
  for (int n : {25, 50, 100}) {
    const PropagationPlan plan{0.0, 4.0, n, n, PropagationMode::in_medium_coupled};
    const auto out = propagate_polariton_coupled(cc.state, cc.controls, cc.medium, plan);
    const auto ref = reference::integrate(cc.controls, cc.medium,
                                          {cc.state.phi_d1, cc.state.phi_d2}, 0.0,
                                          out.back().t, 2000);
    errors.push_back(pair_error(out.back(), ref));
  }
  INFO("errors " << errors[0] << " " << errors[1] << " " << errors[2]);
  CHECK_THAT(errors[0] / errors[1], WithinAbs(4.0, 0.8));
  CHECK_THAT(errors[1] / errors[2], WithinAbs(4.0, 0.8));
}
