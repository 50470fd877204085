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

// Vector and scalar potentials of the dark-polariton equations.
//
// With the column (Phi_D1, Phi_D2) the dark polaritons obey
//
//   i d/dt Phi = [ -1/2 diag(hbar/m_D1, hbar/m) lap + i J . grad + U ] Phi
//
// (everything divided by hbar, so J is a velocity in lambda gamma and U a
// frequency in gamma). `assemble_full_matrices` evaluates J and U for the
// bare polaritons; `assemble_paraxial_matrices` evaluates J' and U' for the
// slowly varying amplitudes of co-propagating beams, where the carrier
// factors exp(+-i (k - k_c) z) are taken at the slab coordinate z.
//
// Fields are transverse slices, so gradients are transverse; spatial
// derivatives of the mixing parameters are spectral, time derivatives come
// in closed form from the control envelopes.

#pragma once

#include <utility>

#include "tripod/grid.hpp"
#include "tripod/mixing.hpp"

namespace tripod {

/// Temporal profile of a control field: a constant level or a C1 smoothstep
/// ramp between two levels in [0, 1], optionally raised to an integer power.
class Envelope {
 public:
  static Envelope constant(double level = 1.0);
  /// Smoothstep from `from` at t_start to `to` at t_start + duration.
  static Envelope ramp(double t_start, double duration, double from, double to);

  /// This envelope raised to the power p >= 1.
  Envelope power(int p) const;

  double value(double t) const noexcept;
  double derivative(double t) const noexcept;

  /// [start, end] of the switching interval; empty (start == end) for a
  /// constant envelope.
  std::pair<double, double> switching_window() const noexcept {
    return {t_start_, t_start_ + duration_};
  }

  bool operator==(const Envelope&) const = default;

 private:
  double t_start_ = 0.0;
  double duration_ = 0.0;
  double from_ = 1.0;
  double to_ = 1.0;
  int power_ = 1;
};

/// The two control Rabi frequencies: transverse profiles times envelopes.
/// The control carrier wavenumber k_c is part of MediumParams.
struct ControlPair {
  ComplexField2D profile_c2;
  ComplexField2D profile_c3;
  Envelope envelope_c2 = Envelope::constant();
  Envelope envelope_c3 = Envelope::constant();

  ComplexField2D omega_c2(double t) const;
  ComplexField2D omega_c3(double t) const;
  bool shared_envelope() const noexcept { return envelope_c2 == envelope_c3; }
  const GridSpec& grid() const noexcept { return profile_c2.grid(); }
  void validate() const;
};

MixingParams mixing_params(const ControlPair& controls,
                           const MediumParams& medium, double t);

/// Time derivatives of the mixing parameters at time t, zero on dark nodes.
struct MixingRates {
  ComplexField2D d_xi_c2;
  ComplexField2D d_xi_c3;
  ComplexField2D d_zeta_1;
  ComplexField2D d_zeta_c;
};

MixingRates mixing_rates(const ControlPair& controls,
                         const MediumParams& medium, double t);

/// xi_c2 d/dt xi_c3 - xi_c3 d/dt xi_c2: the temporal part of the coupling
/// between the dark polaritons. Exactly zero for shared envelopes.
ComplexField2D temporal_coupling(const ControlPair& controls,
                                 const MediumParams& medium, double t);

struct VectorField {
  ComplexField2D x;
  ComplexField2D y;
};

struct CouplingMatrices {
  enum class Variant { full, paraxial };

  Variant variant = Variant::paraxial;
  VectorField j11, j12, j21, j22;
  ComplexField2D u11, u12, u21, u22;

  const GridSpec& grid() const noexcept { return u11.grid(); }
};

/// J' and U' for co-propagating controls at time t and slab coordinate z
/// (in wavelengths). `mix` must describe the controls at time t.
CouplingMatrices assemble_paraxial_matrices(const ControlPair& controls,
                                            const MixingParams& mix,
                                            const MediumParams& medium,
                                            double t, double z = 0.0);

/// J and U for the bare polaritons. J21 is taken as the conjugate of J12.
CouplingMatrices assemble_full_matrices(const ControlPair& controls,
                                        const MixingParams& mix,
                                        const MediumParams& medium, double t);

struct DecouplingReport {
  bool shared_envelope = false;       // temporal off-diagonal term identically 0
  double max_temporal_coupling = 0.0; // max |xi_c2 dxi_c3 - xi_c3 dxi_c2|, gamma
  double pulse_duration = 0.0;        // tau = pulse_length / v_g1, 1/gamma
  double recoil_pulse_product = 0.0;  // omega_rec tau
  double offdiagonal_ratio = 0.0;     // max |U12' spatial| / max |U11'|, |U22'|
  double offdiagonal_phase = 0.0;     // tau max |U12' spatial|
  bool decoupled = false;
};

/// Decoupling diagnostics for a pulse of length `pulse_length` (wavelengths)
/// travelling through the medium dressed by `controls`; tau uses v_g1 at the
/// node where the controls are strongest. The envelopes are
/// scanned over their switching windows. The verdict is "decoupled" when the
/// temporal coupling vanishes, omega_rec tau <= 0.1 and the phase picked up
/// from the spatial off-diagonal terms over tau is <= 1e-2.
DecouplingReport decoupling_report(const ControlPair& controls,
                                   const MediumParams& medium,
                                   double pulse_length);

struct AdiabaticityReport {
  double ratio = 0.0;               // L / (v_rad gamma^-1 Omega_c^2 tau^2)
  double polariton_lifetime = 0.0;  // gamma^-1 (Omega_c tau)^2
  double transit_time = 0.0;        // L / v_rad
  double v_rad = 0.0;               // lambda gamma
};

/// Loss criterion with every quantity supplied explicitly (v_rad in lambda
/// gamma, lengths in lambda, times in 1/gamma). Non-positive inputs throw
/// Error(invalid_argument).
AdiabaticityReport adiabaticity_ratio(double sample_length, double v_rad,
                                      double gamma, double omega_c,
                                      double pulse_duration);

/// Same criterion with v_rad = c Omega_c^2 / (Omega_c^2 + G^2) taken from the
/// medium.
AdiabaticityReport adiabaticity_check(const MediumParams& medium,
                                      double omega_c, double pulse_duration,
                                      double sample_length);

}  // namespace tripod
