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

// Storage and retrieval of a probe pulse in the tripod medium.
//
// The probe enters as the first dark polariton, is frozen into the ground
// state coherences Phi_2, Phi_3 when the controls are switched off with a
// fixed ratio, and is released again by a second (arbitrary) pair of
// controls. Only the first released polariton carries light; the second one
// stays in the medium.

#pragma once

#include <optional>
#include <vector>

#include "tripod/coupling.hpp"
#include "tripod/grid.hpp"
#include "tripod/mixing.hpp"

namespace tripod {

struct StoredCoherences {
  ComplexField2D phi_2;
  ComplexField2D phi_3;
};

/// Phi_D1 = E / zeta_c, Phi_D2 = Phi_B = 0. Throws Error(division_by_zero)
/// where zeta_c = 0 but the probe is nonzero.
PolaritonState inject_probe(const ComplexField2D& probe,
                            const MixingParams& mix_s);

/// Phi_2 = -conj(xi_c2) Phi_D1, Phi_3 = -conj(xi_c3) Phi_D1 (zeta_1 -> 1).
StoredCoherences store(const PolaritonState& pol, const MixingParams& mix_s);

/// As above, after checking that the switch-off of `controls` keeps xi_c2,
/// xi_c3 fixed to 1e-6 on every node where Omega_c > 0. The mixing angles
/// are taken when the controls start to switch off. Throws
/// Error(ratio_drift) otherwise.
StoredCoherences store(const PolaritonState& pol, const ControlPair& controls,
                       const MediumParams& medium);

/// Uniform decay exp(-storage_time / coherence_time) of the stored
/// coherences. No decay when coherence_time is empty.
StoredCoherences apply_storage_decay(const StoredCoherences& stored,
                                     double storage_time,
                                     std::optional<double> coherence_time);

/// Polaritons regenerated by the retrieval controls: the bare state
/// (E = 0, Phi_2, Phi_3) mapped with the retrieval xi_c2, xi_c3 in the
/// switch-on limit zeta_1 = 1.
PolaritonState retrieve(const StoredCoherences& stored,
                        const MixingParams& mix_r);

/// E = zeta_c Phi_D1.
ComplexField2D regenerated_field(const PolaritonState& pol_r,
                                 const MixingParams& mix_r);

/// Slow-light form of the regenerated probe,
///   (Omega_c2^r conj(Omega_c2^s) + Omega_c3^r conj(Omega_c3^s))
///     / (|Omega_c2^s|^2 + |Omega_c3^s|^2) * E^s,
/// zero where the storing controls vanish.
ComplexField2D slow_light_regenerated_field(const ComplexField2D& probe,
                                            const ControlPair& storing,
                                            const ControlPair& retrieving);

enum class RetrievalCase { lambda_to_tripod, tripod_to_lambda };

struct ClosedFormParams {
  double a = 1.0;
  double b = 1.0;
  double sigma_p = 10.0;
  double sigma_s = 10.0;
  double sigma_r = 10.0;
  double e0 = 1.0;
  int charge = 1;

  /// sigma^-2 = sigma_p^-2 + sigma_r^-2 - sigma_s^-2; throws
  /// Error(invalid_argument) unless the widths are positive and the
  /// combination is positive.
  double effective_sigma() const;
};

/// Retrieved probe for a Gaussian probe stored and released by the control
/// pairs built by `storing_controls` / `retrieving_controls` below. With
/// u = rho e^{i phi} and l the vortex charge:
///   lambda_to_tripod:  a e0 u^l exp(-rho^2 / sigma^2)
///   tripod_to_lambda:  a e0 conj(u)^l exp(-rho^2 / sigma^2) / (rho^2l + b^2)
ComplexField2D closed_form_retrieved_beam(RetrievalCase c,
                                          const ClosedFormParams& p,
                                          const GridSpec& grid);

/// Control profiles of the two vortex cases with overall amplitude A:
///   lambda_to_tripod  store  Omega_c2 = (A/a) g_s,        Omega_c3 = 0
///                     fetch  Omega_c2 = A u^l g_r,        Omega_c3 = b A g_r
///   tripod_to_lambda  store  Omega_c2 = A u^l g_s,        Omega_c3 = b A g_s
///                     fetch  Omega_c2 = a A g_r,          Omega_c3 = 0
/// where g_x = exp(-rho^2 / sigma_x^2).
ControlPair storing_controls(RetrievalCase c, const ClosedFormParams& p,
                             double amplitude, const GridSpec& grid);
ControlPair retrieving_controls(RetrievalCase c, const ClosedFormParams& p,
                                double amplitude, const GridSpec& grid);

/// Gaussian probe e0 exp(-rho^2 / sigma_p^2).
ComplexField2D gaussian_probe(const ClosedFormParams& p, const GridSpec& grid);

struct LinearityGuard {
  double worst_ratio = 0.0;  // max |Omega_p| / Omega_c over the probe support
  bool satisfied = true;     // worst_ratio <= 0.1
};

/// Probe Rabi frequency |Omega_p| = rabi_peak |E| / max |E| compared with
/// Omega_c on nodes where |E| >= 1e-3 max |E|.
LinearityGuard linearity_guard(const ComplexField2D& probe,
                               const MixingParams& mix, double rabi_peak);

struct ProtocolResult {
  PolaritonState injected;
  StoredCoherences stored;
  PolaritonState retrieved;
  ComplexField2D regenerated;
  LinearityGuard guard;
};

/// inject -> store -> (decay) -> retrieve -> regenerate with the control
/// profiles at full envelope.
ProtocolResult run_memory_protocol(const ComplexField2D& probe,
                                   const ControlPair& storing,
                                   const ControlPair& retrieving,
                                   const MediumParams& medium,
                                   double probe_rabi_peak,
                                   double storage_time = 0.0,
                                   std::optional<double> coherence_time = {});

/// Probe frames sampled at t0, t0 + dt, ...
struct TimeSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<ComplexField2D> frames;
};

/// Retarded-time transport without diffraction: E(t, z) = E(t - delay, 0)
/// with delay = integral_0^z dz' / v_g1 by the trapezoidal rule over the
/// equally spaced samples `v_g1` (lambda gamma, sample 0 at the entrance,
/// last sample at z). Values between frames are interpolated linearly, and
/// times before the first or after the last frame give zero. Throws
/// Error(invalid_argument) on non-positive velocities.
TimeSeries transport_probe_in_medium(const TimeSeries& e_in,
                                     const std::vector<RealField2D>& v_g1,
                                     double z);

}  // namespace tripod
