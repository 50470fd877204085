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

#include "tripod/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace tripod {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double ipow(double x, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= x;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Envelope

Envelope Envelope::constant(double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "envelope level must be in [0, 1]");
  }
  Envelope e;
  e.from_ = e.to_ = level;
  return e;
}

Envelope Envelope::ramp(double t_start, double duration, double from,
                        double to) {
  if (!(from >= 0.0 && from <= 1.0 && to >= 0.0 && to <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "envelope levels must be in [0, 1]");
  }
  if (!(duration > 0.0) || !std::isfinite(t_start)) {
    throw Error(ErrorCode::invalid_argument,
                "ramp needs a finite start and a positive duration");
  }
  Envelope e;
  e.t_start_ = t_start;
  e.duration_ = duration;
  e.from_ = from;
  e.to_ = to;
  return e;
}

Envelope Envelope::power(int p) const {
  if (p < 1) throw Error(ErrorCode::invalid_argument, "envelope power must be >= 1");
  Envelope e = *this;
  e.power_ = power_ * p;
  return e;
}

double Envelope::value(double t) const noexcept {
  double base = to_;
  if (duration_ > 0.0) {
    const double u = std::clamp((t - t_start_) / duration_, 0.0, 1.0);
    base = from_ + (to_ - from_) * u * u * (3.0 - 2.0 * u);
  }
  return ipow(base, power_);
}

double Envelope::derivative(double t) const noexcept {
  if (duration_ <= 0.0) return 0.0;
  const double u = (t - t_start_) / duration_;
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double base = from_ + (to_ - from_) * u * u * (3.0 - 2.0 * u);
  const double d_base = (to_ - from_) * 6.0 * u * (1.0 - u) / duration_;
  return power_ * ipow(base, power_ - 1) * d_base;
}

// ---------------------------------------------------------------------------
// ControlPair

ComplexField2D ControlPair::omega_c2(double t) const {
  return envelope_c2.value(t) * profile_c2;
}

ComplexField2D ControlPair::omega_c3(double t) const {
  return envelope_c3.value(t) * profile_c3;
}

void ControlPair::validate() const {
  require_same_grid(profile_c2.grid(), profile_c3.grid(), "control pair");
  if (!all_finite(profile_c2) || !all_finite(profile_c3)) {
    throw Error(ErrorCode::invalid_argument, "control profiles must be finite");
  }
}

MixingParams mixing_params(const ControlPair& controls,
                           const MediumParams& medium, double t) {
  return mixing_params(controls.omega_c2(t), controls.omega_c3(t), medium);
}

MixingRates mixing_rates(const ControlPair& controls,
                         const MediumParams& medium, double t) {
  controls.validate();
  const auto& grid = controls.grid();
  const auto coupling = medium.coupling(grid);
  const double f2 = controls.envelope_c2.value(t);
  const double f3 = controls.envelope_c3.value(t);
  const double df2 = controls.envelope_c2.derivative(t);
  const double df3 = controls.envelope_c3.derivative(t);
  // f2' f3 - f2 f3' vanishes identically for shared envelopes
  const double wronskian = df2 * f3 - f2 * df3;

  MixingRates r{ComplexField2D(grid), ComplexField2D(grid),
                ComplexField2D(grid), ComplexField2D(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx p2 = controls.profile_c2[k];
    const cplx p3 = controls.profile_c3[k];
    const double a2 = std::norm(p2);
    const double a3 = std::norm(p3);
    const double oc2 = a2 * f2 * f2 + a3 * f3 * f3;
    if (!(oc2 > 0.0)) continue;
    const double oc = std::sqrt(oc2);
    const double oc3 = oc2 * oc;
    r.d_xi_c2[k] = p2 * (a3 * f3 * wronskian / oc3);
    r.d_xi_c3[k] = p3 * (-a2 * f2 * wronskian / oc3);

    const double d_oc = (a2 * f2 * df2 + a3 * f3 * df3) / oc;
    const double g = coupling[k];
    const double xi2 = oc2 + g * g;
    const double xi3 = xi2 * std::sqrt(xi2);
    r.d_zeta_c[k] = d_oc * g * g / xi3;
    r.d_zeta_1[k] = -g * oc * d_oc / xi3;
  }
  return r;
}

ComplexField2D temporal_coupling(const ControlPair& controls,
                                 const MediumParams& medium, double t) {
  const auto mix = mixing_params(controls, medium, t);
  const auto rates = mixing_rates(controls, medium, t);
  return mix.xi_c2 * rates.d_xi_c3 - mix.xi_c3 * rates.d_xi_c2;
}

// ---------------------------------------------------------------------------
// Matrix assembly

namespace {

struct Spatial {
  Gradient g2, g3, g1, gc;       // gradients of xi_c2, xi_c3, zeta_1, zeta_c
  ComplexField2D l2, l3, l1, lc; // Laplacians of the same
};

Spatial spatial_derivatives(const MixingParams& mix) {
  return {gradient(mix.xi_c2),
          gradient(mix.xi_c3),
          gradient(mix.zeta_1),
          gradient(mix.zeta_c),
          laplacian_transverse(mix.xi_c2),
          laplacian_transverse(mix.xi_c3),
          laplacian_transverse(mix.zeta_1),
          laplacian_transverse(mix.zeta_c)};
}

struct Vec2 {
  cplx x, y;
};

Vec2 operator*(cplx s, Vec2 v) { return {s * v.x, s * v.y}; }
Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 conj(Vec2 v) { return {std::conj(v.x), std::conj(v.y)}; }
cplx dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
Vec2 at(const Gradient& g, std::size_t k) { return {g.x[k], g.y[k]}; }

void store(VectorField& v, std::size_t k, Vec2 value) {
  v.x[k] = value.x;
  v.y[k] = value.y;
}

CouplingMatrices assemble(const ControlPair& controls, const MixingParams& mix,
                          const MediumParams& medium, double t, double z,
                          CouplingMatrices::Variant variant) {
  controls.validate();
  medium.validate();
  const auto& grid = mix.grid();
  require_same_grid(controls.grid(), grid, "coupling matrix assembly");

  const bool paraxial = variant == CouplingMatrices::Variant::paraxial;
  const auto d = spatial_derivatives(mix);
  const auto rates = mixing_rates(controls, medium, t);
  const auto v2 = medium.potential(2, grid);
  const auto v3 = medium.potential(3, grid);

  const double atom = medium.atom_diffusion();
  const double photon = medium.photon_diffusion();
  const double dk = kTwoPi * (medium.k - medium.k_c);
  // exp(i (k_c - k) z) multiplies the 1 -> 2 elements of the paraxial form
  const cplx ph = paraxial ? std::exp(cplx(0.0, -dk * z)) : cplx(1.0);
  const double recoil_shift = paraxial ? 0.5 * atom * dk * dk : 0.0;
  const double carrier = paraxial ? 0.0 : 0.5 * medium.optical_frequency;

  auto vf = [&] { return VectorField{ComplexField2D(grid), ComplexField2D(grid)}; };
  CouplingMatrices m{variant, vf(), vf(), vf(), vf(), ComplexField2D(grid),
                     ComplexField2D(grid), ComplexField2D(grid),
                     ComplexField2D(grid)};

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx x2 = mix.xi_c2[k], x3 = mix.xi_c3[k];
    const cplx z1 = mix.zeta_1[k], zc = mix.zeta_c[k];
    const Vec2 gx2 = at(d.g2, k), gx3 = at(d.g3, k);
    const Vec2 gz1 = at(d.g1, k), gzc = at(d.gc, k);
    const cplx lx2 = d.l2[k], lx3 = d.l3[k], lz1 = d.l1[k], lzc = d.lc[k];
    const cplx dx2 = rates.d_xi_c2[k], dx3 = rates.d_xi_c3[k];
    const cplx dz1 = rates.d_zeta_1[k], dzc = rates.d_zeta_c[k];
    const double w21 = medium.omega21 + v2[k];
    const double w31 = medium.omega31 + v3[k];
    const double w32 = medium.omega32() + v3[k] - v2[k];
    const double z1sq = std::norm(z1);

    const Vec2 j_b2 = (kI * atom) * (x2 * conj(gx2) + x3 * conj(gx3));
    const Vec2 j11 = kI * (photon * zc * gzc + atom * std::conj(z1) * gz1) +
                     z1sq * j_b2;
    const Vec2 j22 = (kI * atom) * (std::conj(x3) * gx3 + std::conj(x2) * gx2);
    const Vec2 cross = x3 * gx2 - x2 * gx3;
    const Vec2 j12 = (kI * atom * std::conj(z1) * ph) * cross;
    const Vec2 j21 = conj(j12);
    // J21 / zeta_1 without dividing by zeta_1
    const Vec2 j21_over_z1 = (-kI * atom * std::conj(ph)) * conj(cross);

    const cplx u_b2 =
        -0.5 * atom * (x2 * std::conj(lx2) + x3 * std::conj(lx3)) +
        w21 * std::norm(x2) + w31 * std::norm(x3) +
        kI * (std::conj(x2) * dx2 + std::conj(x3) * dx3);

    m.u11[k] = -0.5 * (photon * zc * lzc + atom * std::conj(z1) * lz1) +
               kI * std::conj(z1) * dot(gz1, j_b2) +
               z1sq * (u_b2 + recoil_shift) - carrier * zc * zc +
               kI * (zc * dzc + z1 * std::conj(dz1));

    m.u22[k] = -0.5 * atom * (std::conj(x3) * lx3 + std::conj(x2) * lx2) +
               w21 * std::norm(x3) + w31 * std::norm(x2) +
               kI * (x3 * std::conj(dx3) + x2 * std::conj(dx2));

    const cplx pre12 = std::conj(z1) * ph;
    m.u12[k] = -0.5 * atom * pre12 * (x3 * lx2 - x2 * lx3) +
               pre12 * x2 * x3 * w32 + kI * pre12 * (x2 * dx3 - x3 * dx2);

    const cplx pre21 = z1 * std::conj(ph);
    m.u21[k] =
        -0.5 * atom * pre21 *
            (std::conj(x2) * std::conj(lx3) - std::conj(x3) * std::conj(lx2)) +
        kI * dot(gz1, j21_over_z1) + pre21 * std::conj(x2) * std::conj(x3) * w32 +
        kI * pre21 * (std::conj(x3) * std::conj(dx2) - std::conj(x2) * std::conj(dx3));

    store(m.j11, k, j11);
    store(m.j12, k, j12);
    store(m.j21, k, j21);
    store(m.j22, k, j22);
  }
  return m;
}

}  // namespace

CouplingMatrices assemble_paraxial_matrices(const ControlPair& controls,
                                            const MixingParams& mix,
                                            const MediumParams& medium,
                                            double t, double z) {
  return assemble(controls, mix, medium, t, z,
                  CouplingMatrices::Variant::paraxial);
}

CouplingMatrices assemble_full_matrices(const ControlPair& controls,
                                        const MixingParams& mix,
                                        const MediumParams& medium, double t) {
  return assemble(controls, mix, medium, t, 0.0,
                  CouplingMatrices::Variant::full);
}

// ---------------------------------------------------------------------------
// Diagnostics

namespace {

std::vector<double> scan_times(const ControlPair& controls) {
  std::vector<double> times;
  for (const auto& env : {controls.envelope_c2, controls.envelope_c3}) {
    const auto [a, b] = env.switching_window();
    if (b <= a) continue;
    constexpr int kSamples = 65;
    for (int s = 0; s < kSamples; ++s) {
      times.push_back(a + (b - a) * s / (kSamples - 1));
    }
  }
  if (times.empty()) times.push_back(0.0);
  return times;
}

double max_abs_pair(const ComplexField2D& a, const ComplexField2D& b) {
  return std::max(max_abs(a), max_abs(b));
}

}  // namespace

DecouplingReport decoupling_report(const ControlPair& controls,
                                   const MediumParams& medium,
                                   double pulse_length) {
  if (!(pulse_length > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "pulse length must be positive");
  }
  controls.validate();
  medium.validate();

  DecouplingReport rep;
  const auto times = scan_times(controls);
  double t_ref = times.front();
  double strongest = -1.0;
  for (double t : times) {
    rep.max_temporal_coupling =
        std::max(rep.max_temporal_coupling,
                 max_abs(temporal_coupling(controls, medium, t)));
    const double s = controls.envelope_c2.value(t) + controls.envelope_c3.value(t);
    if (s > strongest) {
      strongest = s;
      t_ref = t;
    }
  }
  rep.shared_envelope = rep.max_temporal_coupling == 0.0;

  const auto mix = mixing_params(controls, medium, t_ref);
  const auto gv = group_velocity_d1(mix, medium);
  // the pulse travels where the controls are strongest
  std::size_t at = 0;
  for (std::size_t k = 1; k < mix.omega_c.size(); ++k) {
    if (mix.omega_c[k] > mix.omega_c[at]) at = k;
  }
  const double v = gv.v_g1[at] * medium.speed_of_light();
  rep.pulse_duration = v > 0.0 ? pulse_length / v : std::numeric_limits<double>::infinity();
  rep.recoil_pulse_product = medium.recoil_frequency * rep.pulse_duration;

  // spatial part of U12': everything except the time-derivative term
  auto static_controls = controls;
  static_controls.envelope_c2 = Envelope::constant(controls.envelope_c2.value(t_ref));
  static_controls.envelope_c3 = Envelope::constant(controls.envelope_c3.value(t_ref));
  const auto m = assemble_paraxial_matrices(static_controls, mix, medium, t_ref);
  const double diag = max_abs_pair(m.u11, m.u22);
  const double off = max_abs(m.u12);
  rep.offdiagonal_ratio = diag > 0.0 ? off / diag : (off > 0.0 ? 1.0 : 0.0);
  rep.offdiagonal_phase = off * rep.pulse_duration;

  rep.decoupled = rep.shared_envelope && rep.recoil_pulse_product <= 0.1 &&
                  rep.offdiagonal_phase <= 1e-2;
  return rep;
}

AdiabaticityReport adiabaticity_ratio(double sample_length, double v_rad,
                                      double gamma, double omega_c,
                                      double pulse_duration) {
  if (!(sample_length > 0.0 && v_rad > 0.0 && gamma > 0.0 && omega_c > 0.0 &&
        pulse_duration > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "adiabaticity check needs positive L, v_rad, gamma, Omega_c, tau");
  }
  AdiabaticityReport r;
  r.v_rad = v_rad;
  const double omega_tau = omega_c * pulse_duration;
  r.polariton_lifetime = omega_tau * omega_tau / gamma;
  r.transit_time = sample_length / v_rad;
  r.ratio = sample_length / (v_rad * r.polariton_lifetime);
  return r;
}

AdiabaticityReport adiabaticity_check(const MediumParams& medium,
                                      double omega_c, double pulse_duration,
                                      double sample_length) {
  medium.validate();
  if (!(omega_c > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "Omega_c must be positive");
  }
  const double oc2 = omega_c * omega_c;
  const double v_rad = medium.speed_of_light() * oc2 /
                       (oc2 + medium.g_sqrt_n * medium.g_sqrt_n);
  return adiabaticity_ratio(sample_length, v_rad, medium.gamma, omega_c,
                            pulse_duration);
}

}  // namespace tripod
