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

#include "tripod/beams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tripod {

void BeamSpec::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorCode::invalid_argument, "beam width must be positive");
  }
  if (std::abs(charge) > kMaxCharge) {
    throw Error(ErrorCode::invalid_argument,
                "vortex charge out of supported range: " +
                    std::to_string(charge));
  }
  if (kind == BeamKind::gaussian && charge != 0) {
    throw Error(ErrorCode::invalid_argument,
                "a gaussian beam cannot carry a vortex charge");
  }
  if (!std::isfinite(amplitude)) {
    throw Error(ErrorCode::invalid_argument, "beam amplitude must be finite");
  }
}

ComplexField2D render_beam(const BeamSpec& spec, const GridSpec& grid) {
  spec.validate();
  const double inv_w2 = 1.0 / (spec.width * spec.width);
  const int l = spec.charge;
  return sample(grid, [&](double x, double y) -> cplx {
    const double r2 = x * x + y * y;
    const cplx envelope = spec.amplitude * std::exp(-r2 * inv_w2);
    if (spec.kind == BeamKind::gaussian || l == 0) return envelope;
    // (x + i y)^l = r^l e^{i l phi}; exact zero on the axis node
    const cplx z = l > 0 ? cplx(x, y) : cplx(x, -y);
    cplx p = 1.0;
    for (int k = 0; k < std::abs(l); ++k) p *= z;
    return envelope * p;
  });
}

namespace {

cplx bilinear(const ComplexField2D& f, double x, double y) {
  const auto& g = f.grid();
  const int n = g.n();
  const double u = x / g.dx() + n / 2;
  const double v = y / g.dx() + n / 2;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double tu = u - fu;
  const double tv = v - fv;
  auto wrap = [n](long k) { return static_cast<int>(((k % n) + n) % n); };
  const int i0 = wrap(static_cast<long>(fu));
  const int j0 = wrap(static_cast<long>(fv));
  const int i1 = (i0 + 1) % n;
  const int j1 = (j0 + 1) % n;
  return (1 - tu) * (1 - tv) * f(i0, j0) + tu * (1 - tv) * f(i1, j0) +
         (1 - tu) * tv * f(i0, j1) + tu * tv * f(i1, j1);
}

double require_positive_norm(const ComplexField2D& f, const char* what) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::degenerate_field,
                std::string(what) + " is undefined for a zero field");
  }
  return s;
}

}  // namespace

int vortex_charge(const ComplexField2D& f, double radius) {
  const auto& g = f.grid();
  if (!(radius >= 4.0 * g.dx())) {
    throw Error(ErrorCode::invalid_argument,
                "vortex loop radius must be at least 4 grid spacings");
  }
  const int samples = 8 * static_cast<int>(std::ceil(radius / g.dx()));
  const double floor = 1e-12 * max_abs(f);

  std::vector<cplx> loop(samples);
  for (int s = 0; s < samples; ++s) {
    const double theta = 2.0 * std::numbers::pi * s / samples;
    loop[s] = bilinear(f, radius * std::cos(theta), radius * std::sin(theta));
    if (!(std::abs(loop[s]) > floor)) {
      throw Error(ErrorCode::degenerate_field,
                  "field vanishes on the vortex sampling loop");
    }
  }
  double winding = 0.0;
  for (int s = 0; s < samples; ++s) {
    // arg of the ratio is the phase increment wrapped to (-pi, pi]
    winding += std::arg(loop[(s + 1) % samples] / loop[s]);
  }
  return static_cast<int>(std::lround(winding / (2.0 * std::numbers::pi)));
}

double oam_expectation(const ComplexField2D& f) {
  const double weight = require_positive_norm(f, "OAM expectation");
  const auto grad = gradient(f);
  const auto& g = f.grid();
  cplx acc = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.coord(i);
      const cplx lz = cplx(0.0, -1.0) * (x * grad.y(i, j) - y * grad.x(i, j));
      acc += std::conj(f(i, j)) * lz;
    }
  }
  return acc.real() / weight;
}

double rms_radius(const ComplexField2D& f) {
  const double weight = require_positive_norm(f, "rms radius");
  const auto& g = f.grid();
  double acc = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double y = g.coord(j);
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.coord(i);
      acc += (x * x + y * y) * std::norm(f(i, j));
    }
  }
  return std::sqrt(acc / weight);
}

namespace {

// Azimuthally averaged |f| sampled at radii s * scale, s on `radii`.
std::vector<double> radial_profile(const ComplexField2D& f, double scale,
                                   const std::vector<double>& radii) {
  constexpr int kAngles = 256;
  std::vector<double> out(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double acc = 0.0;
    for (int a = 0; a < kAngles; ++a) {
      const double theta = 2.0 * std::numbers::pi * a / kAngles;
      const double r = radii[k] * scale;
      acc += std::abs(bilinear(f, r * std::cos(theta), r * std::sin(theta)));
    }
    out[k] = acc / kAngles;
  }
  return out;
}

double radial_integral(const std::vector<double>& radii,
                       const std::vector<double>& integrand) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    const double h = radii[k + 1] - radii[k];
    s += 0.5 * h *
         (integrand[k] * radii[k] + integrand[k + 1] * radii[k + 1]);
  }
  return 2.0 * std::numbers::pi * s;
}

}  // namespace

double radial_shape_distance(const ComplexField2D& a, const ComplexField2D& b) {
  require_same_grid(a.grid(), b.grid(), "radial_shape_distance");
  const double ra = rms_radius(a);
  const double rb = rms_radius(b);
  const double reach = 0.999 * a.grid().extent();
  const double s_max = std::min(reach / ra, reach / rb);

  constexpr int kRadii = 1024;
  std::vector<double> radii(kRadii);
  for (int k = 0; k < kRadii; ++k) radii[k] = s_max * k / (kRadii - 1);

  auto pa = radial_profile(a, ra, radii);
  auto pb = radial_profile(b, rb, radii);
  auto normalize = [&](std::vector<double>& p) {
    std::vector<double> sq(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) sq[k] = p[k] * p[k];
    const double norm = std::sqrt(radial_integral(radii, sq));
    for (auto& v : p) v /= norm;
  };
  normalize(pa);
  normalize(pb);
  std::vector<double> diff(kRadii);
  for (int k = 0; k < kRadii; ++k) diff[k] = (pa[k] - pb[k]) * (pa[k] - pb[k]);
  return std::sqrt(radial_integral(radii, diff));
}

}  // namespace tripod
