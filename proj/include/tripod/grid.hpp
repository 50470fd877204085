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

// Uniform square transverse grids, sampled fields and spectral calculus.
//
// All lengths are measured in units of the probe wavelength. A grid with n
// points per axis and half-width `extent` covers [-extent, extent) on both
// axes with spacing dx = 2 extent / n; node (n/2, n/2) sits at the origin.
// Fields are stored row-major: value(i, j) lives at j * n + i, where i runs
// along x and j along y. Boundary conditions are periodic.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tripod/error.hpp"

namespace tripod {

using cplx = std::complex<double>;

class GridSpec {
 public:
  GridSpec() = default;

  int n() const noexcept { return n_; }
  double extent() const noexcept { return extent_; }
  double dx() const noexcept { return 2.0 * extent_ / n_; }
  double cell_area() const noexcept { return dx() * dx(); }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  bool empty() const noexcept { return n_ == 0; }

  /// Coordinate of node index i along either axis.
  double coord(int i) const noexcept { return (i - n_ / 2) * dx(); }

  /// Angular wavenumber of FFT bin i (standard FFT ordering, Nyquist bin
  /// carries the negative frequency).
  double wavenumber(int i) const noexcept;

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(i);
  }

  bool operator==(const GridSpec&) const = default;

 private:
  friend GridSpec make_grid(int n, double extent);
  int n_ = 0;
  double extent_ = 0.0;
};

/// Throws Error(invalid_argument) unless n is a power of two >= 16 and
/// extent > 0.
GridSpec make_grid(int n, double extent);

template <class T>
class Field2D {
 public:
  using value_type = T;

  Field2D() = default;
  explicit Field2D(const GridSpec& grid, T fill = T{})
      : grid_(grid), values_(grid.size(), fill) {}
  Field2D(const GridSpec& grid, std::vector<T> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "field value count does not match grid size");
    }
  }

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  T& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const noexcept {
    return values_[grid_.index(i, j)];
  }
  T& operator[](std::size_t k) noexcept { return values_[k]; }
  const T& operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

 private:
  GridSpec grid_;
  std::vector<T> values_;
};

using ComplexField2D = Field2D<cplx>;
using RealField2D = Field2D<double>;

/// Samples fn(x, y) at every node.
template <class T = cplx, class Fn>
Field2D<T> sample(const GridSpec& grid, Fn&& fn) {
  Field2D<T> out(grid);
  const int n = grid.n();
  for (int j = 0; j < n; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < n; ++i) out(i, j) = fn(grid.coord(i), y);
  }
  return out;
}

/// Throws Error(grid_mismatch) naming `context` when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b,
                       const char* context);

bool all_finite(const ComplexField2D& f) noexcept;
double max_abs(const ComplexField2D& f) noexcept;
ComplexField2D conjugate(const ComplexField2D& f);
ComplexField2D to_complex(const RealField2D& f);

ComplexField2D operator+(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D operator-(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D operator*(const ComplexField2D& a, const ComplexField2D& b);
ComplexField2D operator*(cplx s, const ComplexField2D& a);

// ---------------------------------------------------------------------------
// Spectral calculus

/// Unitary 2D DFT: coefficients are scaled by 1/n so that the sum of squared
/// magnitudes is preserved.
std::vector<cplx> to_spectral(const ComplexField2D& f);
ComplexField2D from_spectral(const GridSpec& grid, std::span<const cplx> c);

/// Multiplies the spectrum of f by `multiplier` (same FFT ordering) and
/// transforms back.
ComplexField2D apply_spectral_multiplier(const ComplexField2D& f,
                                         std::span<const cplx> multiplier);

/// Squared transverse wavenumber kx^2 + ky^2 per FFT bin.
std::vector<double> wavenumber_squared(const GridSpec& grid);

ComplexField2D laplacian_transverse(const ComplexField2D& f);
ComplexField2D derivative_x(const ComplexField2D& f);
ComplexField2D derivative_y(const ComplexField2D& f);

struct Gradient {
  ComplexField2D x;
  ComplexField2D y;
};
Gradient gradient(const ComplexField2D& f);

/// Discrete L2 norm: sum |f|^2 dx^2.
double norm_sq(const ComplexField2D& f) noexcept;

/// sum conj(a) b dx^2.
cplx inner_product(const ComplexField2D& a, const ComplexField2D& b);

}  // namespace tripod
