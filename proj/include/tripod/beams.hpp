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

// Beam profiles and orbital-angular-momentum diagnostics.
//
// Profiles are unnormalized: a Gaussian is A exp(-r^2 / s^2) and a
// Laguerre-Gaussian of charge l (radial order zero) is
// A r^|l| exp(i l phi) exp(-r^2 / s^2), with phi measured counterclockwise
// from +x about the grid center.

#pragma once

#include "tripod/grid.hpp"

namespace tripod {

enum class BeamKind { gaussian, lg };

struct BeamSpec {
  BeamKind kind = BeamKind::gaussian;
  double amplitude = 1.0;
  double width = 10.0;
  int charge = 0;

  static constexpr int kMaxCharge = 8;

  /// Throws Error(invalid_argument) on a non-positive width, |charge| > 8 or
  /// a Gaussian with nonzero charge.
  void validate() const;

  static BeamSpec gaussian(double amplitude, double width) {
    return {BeamKind::gaussian, amplitude, width, 0};
  }
  static BeamSpec laguerre_gauss(double amplitude, double width, int charge) {
    return {BeamKind::lg, amplitude, width, charge};
  }
};

ComplexField2D render_beam(const BeamSpec& spec, const GridSpec& grid);

/// Winding number of the phase along a circle of the given radius about the
/// grid center. The loop has 8 ceil(radius / dx) bilinearly interpolated
/// samples. Throws Error(invalid_argument) for radius < 4 dx and
/// Error(degenerate_field) when |f| on the loop drops below 1e-12 max|f|.
int vortex_charge(const ComplexField2D& f, double radius);

/// <f| -i (x d/dy - y d/dx) |f> / <f|f> with spectral derivatives.
double oam_expectation(const ComplexField2D& f);

/// sqrt(<r^2>) with |f|^2 as the weight.
double rms_radius(const ComplexField2D& f);

/// L2 distance between the azimuthally averaged amplitude profiles of two
/// fields after each is rescaled to unit rms radius and unit norm. Zero when
/// the two beams have the same radial shape irrespective of width and power.
double radial_shape_distance(const ComplexField2D& a, const ComplexField2D& b);

}  // namespace tripod
