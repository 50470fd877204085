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

#include "tripod/memory_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tripod/beams.hpp"

namespace tripod {

namespace {

constexpr double kDriftTolerance = 1e-6;

MixingParams full_mixing(const ControlPair& controls,
                         const MediumParams& medium) {
  return mixing_params(controls.profile_c2, controls.profile_c3, medium);
}

// u^l with u = x + i y; negative l uses conj(u).
cplx vortex_factor(double x, double y, int l) {
  const cplx u = l >= 0 ? cplx(x, y) : cplx(x, -y);
  cplx p = 1.0;
  for (int k = 0; k < std::abs(l); ++k) p *= u;
  return p;
}

}  // namespace

PolaritonState inject_probe(const ComplexField2D& probe,
                            const MixingParams& mix_s) {
  const auto& grid = mix_s.grid();
  require_same_grid(probe.grid(), grid, "inject_probe");
  PolaritonState pol{ComplexField2D(grid), ComplexField2D(grid),
                     ComplexField2D(grid)};
  std::size_t bad = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx zc = mix_s.zeta_c[k];
    if (zc == 0.0) {
      if (probe[k] != 0.0) ++bad;
      continue;
    }
    pol.phi_d1[k] = probe[k] / zc;
  }
  if (bad > 0) {
    throw Error(ErrorCode::division_by_zero,
                "probe present at " + std::to_string(bad) +
                    " nodes without control field (zeta_c = 0)");
  }
  return pol;
}

StoredCoherences store(const PolaritonState& pol, const MixingParams& mix_s) {
  const auto& grid = mix_s.grid();
  require_same_grid(pol.phi_d1.grid(), grid, "store");
  StoredCoherences s{ComplexField2D(grid), ComplexField2D(grid)};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    s.phi_2[k] = -std::conj(mix_s.xi_c2[k]) * pol.phi_d1[k];
    s.phi_3[k] = -std::conj(mix_s.xi_c3[k]) * pol.phi_d1[k];
  }
  return s;
}

StoredCoherences store(const PolaritonState& pol, const ControlPair& controls,
                       const MediumParams& medium) {
  controls.validate();
  const auto w2 = controls.envelope_c2.switching_window();
  const auto w3 = controls.envelope_c3.switching_window();
  const double t_begin = std::min(w2.first, w3.first);
  const double t_end = std::max(w2.second, w3.second);
  const auto reference = mixing_params(controls, medium, t_begin);

  constexpr int kSamples = 33;
  for (int s = 1; s < kSamples && t_end > t_begin; ++s) {
    const double t = t_begin + (t_end - t_begin) * s / (kSamples - 1);
    const auto mix = mixing_params(controls, medium, t);
    for (std::size_t k = 0; k < mix.omega_c.size(); ++k) {
      if (mix.dark_nodes[k] || reference.dark_nodes[k]) continue;
      const double drift =
          std::max(std::abs(mix.xi_c2[k] - reference.xi_c2[k]),
                   std::abs(mix.xi_c3[k] - reference.xi_c3[k]));
      if (drift > kDriftTolerance) {
        throw Error(ErrorCode::ratio_drift,
                    "control ratio drifts by " + std::to_string(drift) +
                        " during switch-off (t = " + std::to_string(t) + ")");
      }
    }
  }
  return store(pol, reference);
}

StoredCoherences apply_storage_decay(const StoredCoherences& stored,
                                     double storage_time,
                                     std::optional<double> coherence_time) {
  if (!coherence_time) return stored;
  if (!(*coherence_time > 0.0) || !(storage_time >= 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "coherence time must be > 0 and storage time >= 0");
  }
  const double f = std::exp(-storage_time / *coherence_time);
  return {f * stored.phi_2, f * stored.phi_3};
}

PolaritonState retrieve(const StoredCoherences& stored,
                        const MixingParams& mix_r) {
  const auto& grid = mix_r.grid();
  require_same_grid(stored.phi_2.grid(), grid, "retrieve");
  require_same_grid(stored.phi_3.grid(), grid, "retrieve");
  // switch-on limit: the retrieval controls start weak, zeta_1 = 1
  MixingParams onset = mix_r;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    onset.zeta_1[k] = 1.0;
    onset.zeta_c[k] = 0.0;
  }
  return to_polaritons(BareState{ComplexField2D(grid), stored.phi_2, stored.phi_3},
                       onset);
}

ComplexField2D regenerated_field(const PolaritonState& pol_r,
                                 const MixingParams& mix_r) {
  require_same_grid(pol_r.phi_d1.grid(), mix_r.grid(), "regenerated_field");
  return mix_r.zeta_c * pol_r.phi_d1;
}

ComplexField2D slow_light_regenerated_field(const ComplexField2D& probe,
                                            const ControlPair& storing,
                                            const ControlPair& retrieving) {
  storing.validate();
  retrieving.validate();
  require_same_grid(probe.grid(), storing.grid(), "slow_light_regenerated_field");
  require_same_grid(probe.grid(), retrieving.grid(),
                    "slow_light_regenerated_field");
  ComplexField2D out(probe.grid());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const cplx s2 = storing.profile_c2[k], s3 = storing.profile_c3[k];
    const double den = std::norm(s2) + std::norm(s3);
    if (den == 0.0) continue;
    const cplx num = retrieving.profile_c2[k] * std::conj(s2) +
                     retrieving.profile_c3[k] * std::conj(s3);
    out[k] = num / den * probe[k];
  }
  return out;
}

double ClosedFormParams::effective_sigma() const {
  if (!(sigma_p > 0.0 && sigma_s > 0.0 && sigma_r > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "beam widths must be positive");
  }
  const double inv2 = 1.0 / (sigma_p * sigma_p) + 1.0 / (sigma_r * sigma_r) -
                      1.0 / (sigma_s * sigma_s);
  if (!(inv2 > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "sigma_p^-2 + sigma_r^-2 - sigma_s^-2 must be positive");
  }
  return 1.0 / std::sqrt(inv2);
}

ComplexField2D closed_form_retrieved_beam(RetrievalCase c,
                                          const ClosedFormParams& p,
                                          const GridSpec& grid) {
  const double sigma = p.effective_sigma();
  const double inv2 = 1.0 / (sigma * sigma);
  const int l = p.charge;
  if (c == RetrievalCase::lambda_to_tripod) {
    return sample(grid, [&](double x, double y) {
      return p.a * p.e0 * vortex_factor(x, y, l) *
             std::exp(-(x * x + y * y) * inv2);
    });
  }
  return sample(grid, [&](double x, double y) {
    const double rho2 = x * x + y * y;
    const double rho2l = std::pow(rho2, std::abs(l));
    return p.a * p.e0 * vortex_factor(x, y, -l) * std::exp(-rho2 * inv2) /
           (rho2l + p.b * p.b);
  });
}

ControlPair storing_controls(RetrievalCase c, const ClosedFormParams& p,
                             double amplitude, const GridSpec& grid) {
  const double inv2 = 1.0 / (p.sigma_s * p.sigma_s);
  if (c == RetrievalCase::lambda_to_tripod) {
    if (p.a == 0.0) {
      throw Error(ErrorCode::invalid_argument, "a must be nonzero");
    }
    return {sample(grid, [&](double x, double y) -> cplx {
              return amplitude / p.a * std::exp(-(x * x + y * y) * inv2);
            }),
            ComplexField2D(grid)};
  }
  return {sample(grid,
                 [&](double x, double y) {
                   return amplitude * vortex_factor(x, y, p.charge) *
                          std::exp(-(x * x + y * y) * inv2);
                 }),
          sample(grid, [&](double x, double y) -> cplx {
            return p.b * amplitude * std::exp(-(x * x + y * y) * inv2);
          })};
}

ControlPair retrieving_controls(RetrievalCase c, const ClosedFormParams& p,
                                double amplitude, const GridSpec& grid) {
  const double inv2 = 1.0 / (p.sigma_r * p.sigma_r);
  if (c == RetrievalCase::lambda_to_tripod) {
    return {sample(grid,
                   [&](double x, double y) {
                     return amplitude * vortex_factor(x, y, p.charge) *
                            std::exp(-(x * x + y * y) * inv2);
                   }),
            sample(grid, [&](double x, double y) -> cplx {
              return p.b * amplitude * std::exp(-(x * x + y * y) * inv2);
            })};
  }
  return {sample(grid, [&](double x, double y) -> cplx {
            return p.a * amplitude * std::exp(-(x * x + y * y) * inv2);
          }),
          ComplexField2D(grid)};
}

ComplexField2D gaussian_probe(const ClosedFormParams& p, const GridSpec& grid) {
  return render_beam(BeamSpec::gaussian(p.e0, p.sigma_p), grid);
}

LinearityGuard linearity_guard(const ComplexField2D& probe,
                               const MixingParams& mix, double rabi_peak) {
  require_same_grid(probe.grid(), mix.grid(), "linearity_guard");
  LinearityGuard g;
  const double peak = max_abs(probe);
  if (peak == 0.0 || rabi_peak == 0.0) return g;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const double rel = std::abs(probe[k]) / peak;
    if (rel < 1e-3) continue;
    const double omega_p = std::abs(rabi_peak) * rel;
    const double oc = mix.omega_c[k];
    const double ratio =
        oc > 0.0 ? omega_p / oc : std::numeric_limits<double>::infinity();
    g.worst_ratio = std::max(g.worst_ratio, ratio);
  }
  g.satisfied = g.worst_ratio <= 0.1;
  return g;
}

ProtocolResult run_memory_protocol(const ComplexField2D& probe,
                                   const ControlPair& storing,
                                   const ControlPair& retrieving,
                                   const MediumParams& medium,
                                   double probe_rabi_peak, double storage_time,
                                   std::optional<double> coherence_time) {
  medium.validate();
  storing.validate();
  retrieving.validate();
  const auto mix_s = full_mixing(storing, medium);
  const auto mix_r = full_mixing(retrieving, medium);

  ProtocolResult r;
  r.guard = linearity_guard(probe, mix_s, probe_rabi_peak);
  r.injected = inject_probe(probe, mix_s);
  r.stored = apply_storage_decay(store(r.injected, storing, medium),
                                 storage_time, coherence_time);
  r.retrieved = retrieve(r.stored, mix_r);
  r.regenerated = regenerated_field(r.retrieved, mix_r);
  return r;
}

TimeSeries transport_probe_in_medium(const TimeSeries& e_in,
                                     const std::vector<RealField2D>& v_g1,
                                     double z) {
  if (e_in.frames.empty()) {
    throw Error(ErrorCode::invalid_argument, "input time series is empty");
  }
  if (!(e_in.dt > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "time step must be positive");
  }
  if (!(z >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "path length must be >= 0");
  }
  const auto& grid = e_in.frames.front().grid();
  for (const auto& f : e_in.frames) require_same_grid(f.grid(), grid, "transport");
  if (z > 0.0 && v_g1.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "need at least two velocity samples along the path");
  }

  std::vector<double> delay(grid.size(), 0.0);
  if (z > 0.0) {
    const double h = z / static_cast<double>(v_g1.size() - 1);
    for (std::size_t s = 0; s < v_g1.size(); ++s) {
      require_same_grid(v_g1[s].grid(), grid, "transport");
      const double w = (s == 0 || s + 1 == v_g1.size()) ? 0.5 * h : h;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = v_g1[s][k];
        if (!(v > 0.0) || !std::isfinite(v)) {
          throw Error(ErrorCode::invalid_argument,
                      "group velocity must be positive along the path");
        }
        delay[k] += w / v;
      }
    }
  }

  TimeSeries out{e_in.t0, e_in.dt, {}};
  const auto count = e_in.frames.size();
  out.frames.assign(count, ComplexField2D(grid));
  for (std::size_t f = 0; f < count; ++f) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      // fractional frame index of the retarded time
      const double u = static_cast<double>(f) - delay[k] / e_in.dt;
      if (u < 0.0 || u > static_cast<double>(count - 1)) continue;
      const double fl = std::floor(u);
      const auto i0 = static_cast<std::size_t>(fl);
      const double w = u - fl;
      cplx v = e_in.frames[i0][k];
      if (w > 0.0) v = (1.0 - w) * v + w * e_in.frames[i0 + 1][k];
      out.frames[f][k] = v;
    }
  }
  return out;
}

}  // namespace tripod
