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

// Polariton mixing for the tripod scheme.
//
// Unit system: frequencies in units of the excited-state decay rate gamma,
// time in 1/gamma, lengths in probe wavelengths, velocities either as a
// fraction of c (radiative/group velocities) or in wavelengths per 1/gamma
// (the coefficients of the polariton equations). Wavenumbers k, k_c are in
// units of 2 pi / lambda.
//
// Given the control Rabi frequencies Omega_c2, Omega_c3 and the collective
// coupling G = g sqrt(n):
//   Omega_c = sqrt(|Omega_c2|^2 + |Omega_c3|^2),  Xi = sqrt(Omega_c^2 + G^2)
//   xi_c2 = Omega_c2 / Omega_c,  xi_c3 = Omega_c3 / Omega_c
//   zeta_1 = G / Xi,  zeta_c = Omega_c / Xi
// The condensate phase is taken as zero, so zeta_1 and zeta_c are real.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tripod/grid.hpp"

namespace tripod {

struct MediumParams {
  double g_sqrt_n = 1e8;          // collective coupling G, units of gamma
  double gamma = 1.0;             // excited-state decay rate
  double omega01 = 0.0;           // one-photon detuning
  double omega21 = 0.0;           // two-photon detunings
  double omega31 = 0.0;
  double recoil_frequency = 1e-3; // hbar (2 pi / lambda)^2 / (2 m), units of gamma
  double optical_frequency = 5e7; // probe carrier omega, units of gamma
  double k = 1.0;                 // probe wavenumber, units of 2 pi / lambda
  double k_c = 1.0;               // control wavenumber, units of 2 pi / lambda

  /// Relative atomic density n(r) / n0; uniform when absent.
  std::optional<RealField2D> density;
  /// Trapping potentials V0..V3 in units of hbar gamma; zero when absent.
  std::array<std::optional<RealField2D>, 4> potentials;

  /// Throws Error(invalid_argument) on violated invariants.
  void validate() const;

  /// hbar / m in lambda^2 gamma.
  double atom_diffusion() const noexcept;
  /// c^2 / omega (hbar over the photon mass) in lambda^2 gamma.
  double photon_diffusion() const noexcept;
  /// c in lambda gamma.
  double speed_of_light() const noexcept;
  double omega32() const noexcept { return omega31 - omega21; }

  /// V_j sampled on `grid`, zero when not supplied.
  RealField2D potential(int j, const GridSpec& grid) const;
  /// G(r) = g_sqrt_n * sqrt(n(r) / n0) on `grid`.
  RealField2D coupling(const GridSpec& grid) const;
};

struct MixingParams {
  ComplexField2D xi_c2;
  ComplexField2D xi_c3;
  ComplexField2D zeta_1;
  ComplexField2D zeta_c;
  RealField2D omega_c;
  RealField2D xi_total;  // Xi
  /// Nonzero where Omega_c == 0; there xi_c2 = 1 and xi_c3 = 0 by convention.
  std::vector<std::uint8_t> dark_nodes;

  const GridSpec& grid() const noexcept { return xi_c2.grid(); }
  std::size_t dark_node_count() const noexcept;
};

MixingParams mixing_params(const ComplexField2D& omega_c2,
                           const ComplexField2D& omega_c3,
                           const MediumParams& medium);

struct BareState {
  ComplexField2D e_field;
  ComplexField2D phi_2;
  ComplexField2D phi_3;
};

struct PolaritonState {
  ComplexField2D phi_d1;
  ComplexField2D phi_d2;
  ComplexField2D phi_b;
};

PolaritonState to_polaritons(const BareState& bare, const MixingParams& mix);
BareState from_polaritons(const PolaritonState& pol, const MixingParams& mix);

/// v_rad / c = Omega_c^2 / (Omega_c^2 + G^2).
RealField2D radiative_velocity(const MixingParams& mix,
                               const MediumParams& medium);

/// m_D1 / m, the first dark polariton's effective mass over the atomic mass.
/// Requires a positive recoil frequency.
RealField2D effective_mass_d1(const MixingParams& mix,
                              const MediumParams& medium);

/// hbar / m_D1 in lambda^2 gamma: the diffraction coefficient of the first
/// dark polariton.
RealField2D kinetic_coefficient_d1(const MixingParams& mix,
                                   const MediumParams& medium);

struct GroupVelocity {
  RealField2D v_g1;          // fraction of c
  RealField2D recoil_term;   // two-photon recoil contribution, fraction of c
  double max_recoil_ratio;   // max |recoil_term| / v_rad over nodes with v_rad > 0
  bool recoil_negligible;    // max_recoil_ratio <= 1e-3
};

GroupVelocity group_velocity_d1(const MixingParams& mix,
                                const MediumParams& medium);

}  // namespace tripod
