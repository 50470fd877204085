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

#include "tripod/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace tripod {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::degenerate_field: return "degenerate-field";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::ratio_drift: return "ratio-drift";
    case ErrorCode::instability: return "instability";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::validation_error: return "validation-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::precondition: return "precondition";
  }
  return "unknown";
}

double GridSpec::wavenumber(int i) const noexcept {
  const int m = i < n_ / 2 ? i : i - n_;
  return 2.0 * std::numbers::pi * m / (2.0 * extent_);
}

GridSpec make_grid(int n, double extent) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw Error(ErrorCode::invalid_argument,
                "grid size must be a power of two >= 16, got " +
                    std::to_string(n));
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorCode::invalid_argument, "grid extent must be positive");
  }
  GridSpec g;
  g.n_ = n;
  g.extent_ = extent;
  return g;
}

void require_same_grid(const GridSpec& a, const GridSpec& b,
                       const char* context) {
  if (!(a == b)) {
    throw Error(ErrorCode::grid_mismatch,
                std::string("fields live on different grids in ") + context);
  }
}

bool all_finite(const ComplexField2D& f) noexcept {
  return std::all_of(f.begin(), f.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

double max_abs(const ComplexField2D& f) noexcept {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

ComplexField2D conjugate(const ComplexField2D& f) {
  ComplexField2D out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::conj(f[k]);
  return out;
}

ComplexField2D to_complex(const RealField2D& f) {
  ComplexField2D out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  return out;
}

namespace {

template <class Op>
ComplexField2D zip(const ComplexField2D& a, const ComplexField2D& b,
                   const char* context, Op op) {
  require_same_grid(a.grid(), b.grid(), context);
  ComplexField2D out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = op(a[k], b[k]);
  return out;
}

}  // namespace

ComplexField2D operator+(const ComplexField2D& a, const ComplexField2D& b) {
  return zip(a, b, "field addition", std::plus<>{});
}

ComplexField2D operator-(const ComplexField2D& a, const ComplexField2D& b) {
  return zip(a, b, "field subtraction", std::minus<>{});
}

ComplexField2D operator*(const ComplexField2D& a, const ComplexField2D& b) {
  return zip(a, b, "field product", std::multiplies<>{});
}

ComplexField2D operator*(cplx s, const ComplexField2D& a) {
  ComplexField2D out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a[k];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// FFTW plans for one grid size. Planning is serialized; execution through
// the new-array interface is thread safe.
class Plans {
 public:
  explicit Plans(int n) : n_(n) {
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    forward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
  }
  ~Plans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  void run(bool forward, std::span<cplx> data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(forward ? forward_ : backward_, p, p);
    const double scale = 1.0 / n_;
    for (auto& v : data) v *= scale;
  }

 private:
  int n_;
  fftw_plan forward_;
  fftw_plan backward_;
};

const Plans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Plans>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plans>(n);
  return *slot;
}

}  // namespace

std::vector<cplx> to_spectral(const ComplexField2D& f) {
  std::vector<cplx> data(f.begin(), f.end());
  plans_for(f.grid().n()).run(true, data);
  return data;
}

ComplexField2D from_spectral(const GridSpec& grid, std::span<const cplx> c) {
  if (c.size() != grid.size()) {
    throw Error(ErrorCode::invalid_argument,
                "spectral coefficient count does not match grid");
  }
  std::vector<cplx> data(c.begin(), c.end());
  plans_for(grid.n()).run(false, data);
  return ComplexField2D(grid, std::move(data));
}

ComplexField2D apply_spectral_multiplier(const ComplexField2D& f,
                                         std::span<const cplx> multiplier) {
  if (multiplier.size() != f.size()) {
    throw Error(ErrorCode::invalid_argument,
                "spectral multiplier size does not match grid");
  }
  auto spec = to_spectral(f);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= multiplier[k];
  return from_spectral(f.grid(), spec);
}

std::vector<double> wavenumber_squared(const GridSpec& grid) {
  const int n = grid.n();
  std::vector<double> k2(grid.size());
  for (int j = 0; j < n; ++j) {
    const double ky = grid.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double kx = grid.wavenumber(i);
      k2[grid.index(i, j)] = kx * kx + ky * ky;
    }
  }
  return k2;
}

ComplexField2D laplacian_transverse(const ComplexField2D& f) {
  const auto k2 = wavenumber_squared(f.grid());
  std::vector<cplx> mult(k2.size());
  for (std::size_t k = 0; k < k2.size(); ++k) mult[k] = -k2[k];
  return apply_spectral_multiplier(f, mult);
}

namespace {

// i k along one axis; the Nyquist bin is dropped so that real fields keep
// real derivatives.
std::vector<cplx> first_derivative_multiplier(const GridSpec& grid,
                                              bool along_x) {
  const int n = grid.n();
  std::vector<cplx> mult(grid.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bin = along_x ? i : j;
      const double k = bin == n / 2 ? 0.0 : grid.wavenumber(bin);
      mult[grid.index(i, j)] = cplx(0.0, k);
    }
  }
  return mult;
}

}  // namespace

ComplexField2D derivative_x(const ComplexField2D& f) {
  return apply_spectral_multiplier(f, first_derivative_multiplier(f.grid(), true));
}

ComplexField2D derivative_y(const ComplexField2D& f) {
  return apply_spectral_multiplier(f,
                                   first_derivative_multiplier(f.grid(), false));
}

Gradient gradient(const ComplexField2D& f) {
  const auto spec = to_spectral(f);
  const auto mx = first_derivative_multiplier(f.grid(), true);
  const auto my = first_derivative_multiplier(f.grid(), false);
  std::vector<cplx> sx(spec.size()), sy(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    sx[k] = spec[k] * mx[k];
    sy[k] = spec[k] * my[k];
  }
  return {from_spectral(f.grid(), sx), from_spectral(f.grid(), sy)};
}

double norm_sq(const ComplexField2D& f) noexcept {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return s * f.grid().cell_area();
}

cplx inner_product(const ComplexField2D& a, const ComplexField2D& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s * a.grid().cell_area();
}

}  // namespace tripod
