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

// Paraxial propagation of the released probe in free space and split-step
// integration of the dark polaritons inside the medium.
//
// In the medium the slices are advanced in the frame co-moving with the
// first polariton: each slab of thickness dz takes dt = dz / v_ref, where
// v_ref is the |Phi_D1|^2-weighted group velocity. One step is the Strang
// sequence
//
//   A(dt/2) R(dt/2) K(dt) R(dt/2) A(dt/2)
//
// with A the pointwise exp(-i U dt), K the exact spectral kinetic step for
// the mean diffraction coefficient and R the remainder (coefficient
// variations and J . grad terms), applied by a 4th order Taylor series on
// substeps.

#pragma once

#include <array>
#include <vector>

#include "tripod/coupling.hpp"
#include "tripod/grid.hpp"
#include "tripod/mixing.hpp"

namespace tripod {

enum class PropagationMode { free_space, in_medium_decoupled, in_medium_coupled };

struct PropagationPlan {
  double z_start = 0.0;
  double z_end = 1.0;
  int n_slices = 1;
  int record_every = 1;
  PropagationMode mode = PropagationMode::free_space;

  double dz() const noexcept { return (z_end - z_start) / n_slices; }
  /// Throws Error(invalid_argument) unless z_end > z_start, n_slices >= 1
  /// and record_every >= 1.
  void validate() const;
};

/// A recorded slice. The initial field is always recorded, then every
/// `record_every` steps, and the final slice.
struct Slice {
  double z = 0.0;
  double t = 0.0;
  ComplexField2D field;
};

struct PairSlice {
  double z = 0.0;
  double t = 0.0;
  ComplexField2D phi_d1;
  ComplexField2D phi_d2;
};

struct PolaritonPair {
  ComplexField2D phi_d1;
  ComplexField2D phi_d2;
};

/// Exact spectral diffraction of the probe envelope (z in wavelengths).
std::vector<Slice> propagate_free_space(const ComplexField2D& e0,
                                        const PropagationPlan& plan);

struct DecoupledOptions {
  bool diffraction = true;  // false drops the kinetic and J11' terms
};

/// Decoupled first polariton with static `matrices` (paraxial variant).
/// Throws Error(instability) when J11' vanishes, U11' is real and a slice
/// gains more than 1e-6 in norm.
std::vector<Slice> propagate_polariton_decoupled(
    const ComplexField2D& phi_d1, const MixingParams& mix,
    const MediumParams& medium, const CouplingMatrices& matrices,
    const PropagationPlan& plan, const DecoupledOptions& options = {});

/// Coupled pair. The mixing parameters and J', U' are reassembled at the
/// midpoint time and position of every step; the clock starts at t_start.
/// Throws Error(instability) when J' vanishes, U' is Hermitian and a slice
/// gains more than 1e-6 in norm.
std::vector<PairSlice> propagate_polariton_coupled(
    const PolaritonPair& state, const ControlPair& controls,
    const MediumParams& medium, const PropagationPlan& plan,
    double t_start = 0.0);

/// 2x2 complex matrix in row-major order.
using Matrix2 = std::array<cplx, 4>;

/// exp(m) by scaling and squaring with a Taylor kernel.
Matrix2 expm2x2(const Matrix2& m);

/// |Phi|^2-weighted mean group velocity of the first polariton in lambda
/// gamma. Throws Error(invalid_argument) unless it is positive.
double reference_velocity(const ComplexField2D& phi_d1, const MixingParams& mix,
                          const MediumParams& medium);

}  // namespace tripod
