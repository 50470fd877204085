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

#include "tripod/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace tripod {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kGrowthLimit = 1e-6;

bool should_record(int step, const PropagationPlan& plan) {
  return step % plan.record_every == 0 || step == plan.n_slices;
}

double max_abs(const VectorField& v) {
  return std::max(tripod::max_abs(v.x), tripod::max_abs(v.y));
}

double max_abs_real(const RealField2D& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double weighted_mean(const RealField2D& values, const ComplexField2D& weight) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double w = std::norm(weight[k]);
    num += w * values[k];
    den += w;
  }
  if (den > 0.0) return num / den;
  for (double v : values) num += v;
  return num / static_cast<double>(values.size());
}

// Generator of the in-medium evolution for one or two components:
//   (H Phi)_c = -1/2 D_c lap Phi_c + i sum_c' J_cc' . grad Phi_c' + sum_c' U_cc' Phi_c'
struct Generator {
  int components = 1;
  std::array<double, 2> d_mean{0.0, 0.0};
  std::array<std::optional<RealField2D>, 2> d_offset;  // D_c - d_mean[c]
  std::array<std::optional<VectorField>, 4> j;         // row-major c, c'
  std::array<std::optional<ComplexField2D>, 4> u;      // row-major c, c'
  bool kinetic = true;
};

struct SpectralTables {
  std::vector<double> k2;
  double k_max = 0.0;
};

SpectralTables spectral_tables(const GridSpec& grid) {
  SpectralTables t{wavenumber_squared(grid), 0.0};
  double m = 0.0;
  for (double v : t.k2) m = std::max(m, v);
  t.k_max = std::sqrt(m);
  return t;
}

double residual_bound(const Generator& g, const SpectralTables& tables) {
  double b = 0.0;
  for (int c = 0; c < g.components; ++c) {
    if (g.d_offset[c]) b += 0.5 * max_abs_real(*g.d_offset[c]) * tables.k_max * tables.k_max;
  }
  for (const auto& jj : g.j) {
    if (jj) b += max_abs(*jj) * tables.k_max;
  }
  return b;
}

double max_potential(const Generator& g) {
  double scale = 0.0;
  for (const auto& uu : g.u) {
    if (uu) scale = std::max(scale, tripod::max_abs(*uu));
  }
  return scale;
}

// True when the residual is negligible against the kinetic and potential
// scales and U is Hermitian; the evolution must then conserve the norm.
bool hermitian(const Generator& g, const SpectralTables& tables) {
  const double scale =
      0.5 * std::max(g.d_mean[0], g.d_mean[1]) * tables.k_max * tables.k_max +
      max_potential(g);
  const double tol = 1e-12 * std::max(scale, 1e-300);
  if (residual_bound(g, tables) > tol) return false;
  if (!g.u[0]) return true;
  const auto& grid = g.u[0]->grid();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::abs((*g.u[0])[k].imag()) > tol) return false;
    if (g.components == 2) {
      if (std::abs((*g.u[3])[k].imag()) > tol) return false;
      if (std::abs((*g.u[1])[k] - std::conj((*g.u[2])[k])) > tol) return false;
    }
  }
  return true;
}

using State = std::array<ComplexField2D, 2>;

double state_norm(const State& s, int components) {
  double n = 0.0;
  for (int c = 0; c < components; ++c) n += norm_sq(s[c]);
  return n;
}

State apply_residual(const Generator& g, const State& phi) {
  const auto& grid = phi[0].grid();
  State out{ComplexField2D(grid), ComplexField2D(grid)};
  std::array<std::optional<Gradient>, 2> grads;
  for (int c = 0; c < g.components; ++c) {
    if (g.d_offset[c]) {
      const auto lap = laplacian_transverse(phi[c]);
      const auto& off = *g.d_offset[c];
      for (std::size_t k = 0; k < grid.size(); ++k) {
        out[c][k] += -0.5 * off[k] * lap[k];
      }
    }
    for (int cp = 0; cp < g.components; ++cp) {
      const auto& jj = g.j[c * 2 + cp];
      if (!jj) continue;
      if (!grads[cp]) grads[cp] = gradient(phi[cp]);
      const auto& gr = *grads[cp];
      for (std::size_t k = 0; k < grid.size(); ++k) {
        out[c][k] += kI * (jj->x[k] * gr.x[k] + jj->y[k] * gr.y[k]);
      }
    }
  }
  return out;
}

// exp(-i tau H_R) by a 4th order Taylor series on substeps with
// tau ||H_R|| <= 0.5.
void residual_step(const Generator& g, const SpectralTables& tables,
                   double tau, State& phi) {
  const double bound = residual_bound(g, tables) * std::abs(tau);
  if (bound <= 1e-14) return;
  const int substeps = std::max(1, static_cast<int>(std::ceil(bound / 0.5)));
  const double h = tau / substeps;
  for (int s = 0; s < substeps; ++s) {
    State term = phi;
    State acc = phi;
    for (int order = 1; order <= 4; ++order) {
      term = apply_residual(g, term);
      const cplx f = -kI * h / static_cast<double>(order);
      for (int c = 0; c < g.components; ++c) {
        for (std::size_t k = 0; k < term[c].size(); ++k) {
          term[c][k] *= f;
          acc[c][k] += term[c][k];
        }
      }
    }
    phi = std::move(acc);
  }
}

void kinetic_step(const Generator& g, const SpectralTables& tables, double tau,
                  State& phi) {
  if (!g.kinetic) return;
  std::vector<cplx> mult(tables.k2.size());
  for (int c = 0; c < g.components; ++c) {
    for (std::size_t k = 0; k < mult.size(); ++k) {
      mult[k] = std::exp(cplx(0.0, -0.5 * g.d_mean[c] * tables.k2[k] * tau));
    }
    phi[c] = apply_spectral_multiplier(phi[c], mult);
  }
}

void potential_step(const Generator& g, double tau, State& phi) {
  const auto& grid = phi[0].grid();
  if (g.components == 1) {
    if (!g.u[0]) return;
    const auto& u = *g.u[0];
    for (std::size_t k = 0; k < grid.size(); ++k) {
      phi[0][k] *= std::exp(-kI * tau * u[k]);
    }
    return;
  }
  auto at = [&](int idx, std::size_t k) -> cplx {
    return g.u[idx] ? (*g.u[idx])[k] : cplx(0.0);
  };
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx f = -kI * tau;
    const Matrix2 e =
        expm2x2({f * at(0, k), f * at(1, k), f * at(2, k), f * at(3, k)});
    const cplx a = phi[0][k], b = phi[1][k];
    phi[0][k] = e[0] * a + e[1] * b;
    phi[1][k] = e[2] * a + e[3] * b;
  }
}

void strang_step(const Generator& g, const SpectralTables& tables, double dt,
                 State& phi) {
  potential_step(g, 0.5 * dt, phi);
  residual_step(g, tables, 0.5 * dt, phi);
  kinetic_step(g, tables, dt, phi);
  residual_step(g, tables, 0.5 * dt, phi);
  potential_step(g, 0.5 * dt, phi);
}

void check_growth(double before, double after, double z) {
  if (before > 0.0 && after > before * (1.0 + kGrowthLimit)) {
    throw Error(ErrorCode::instability,
                "norm grew by " + std::to_string(after / before - 1.0) +
                    " in the slice at z = " + std::to_string(z));
  }
}

}  // namespace

void PropagationPlan::validate() const {
  if (!(z_end > z_start) || !std::isfinite(z_start) || !std::isfinite(z_end)) {
    throw Error(ErrorCode::invalid_argument, "plan needs z_end > z_start");
  }
  if (n_slices < 1) throw Error(ErrorCode::invalid_argument, "n_slices must be >= 1");
  if (record_every < 1) {
    throw Error(ErrorCode::invalid_argument, "record_every must be >= 1");
  }
}

std::vector<Slice> propagate_free_space(const ComplexField2D& e0,
                                        const PropagationPlan& plan) {
  plan.validate();
  if (plan.mode != PropagationMode::free_space) {
    throw Error(ErrorCode::invalid_argument, "plan mode must be free_space");
  }
  const auto k2 = wavenumber_squared(e0.grid());
  const double dz = plan.dz();
  std::vector<cplx> mult(k2.size());
  for (std::size_t k = 0; k < k2.size(); ++k) {
    mult[k] = std::exp(cplx(0.0, -k2[k] * dz / (4.0 * std::numbers::pi)));
  }

  std::vector<Slice> out{{plan.z_start, 0.0, e0}};
  // stay in the spectral domain between recorded slices
  auto spectrum = to_spectral(e0);
  for (int s = 1; s <= plan.n_slices; ++s) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= mult[k];
    if (should_record(s, plan)) {
      out.push_back({plan.z_start + s * dz, 0.0,
                     from_spectral(e0.grid(), spectrum)});
    }
  }
  return out;
}

double reference_velocity(const ComplexField2D& phi_d1, const MixingParams& mix,
                          const MediumParams& medium) {
  require_same_grid(phi_d1.grid(), mix.grid(), "reference_velocity");
  const auto gv = group_velocity_d1(mix, medium);
  const double v = weighted_mean(gv.v_g1, phi_d1) * medium.speed_of_light();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument,
                "the first polariton does not propagate (v_g1 <= 0)");
  }
  return v;
}

std::vector<Slice> propagate_polariton_decoupled(
    const ComplexField2D& phi_d1, const MixingParams& mix,
    const MediumParams& medium, const CouplingMatrices& matrices,
    const PropagationPlan& plan, const DecoupledOptions& options) {
  plan.validate();
  if (plan.mode != PropagationMode::in_medium_decoupled) {
    throw Error(ErrorCode::invalid_argument, "plan mode must be in_medium_decoupled");
  }
  medium.validate();
  const auto& grid = mix.grid();
  require_same_grid(phi_d1.grid(), grid, "propagate_polariton_decoupled");
  require_same_grid(matrices.grid(), grid, "propagate_polariton_decoupled");

  Generator g;
  g.components = 1;
  g.kinetic = options.diffraction;
  g.u[0] = matrices.u11;
  if (options.diffraction) {
    const auto d1 = kinetic_coefficient_d1(mix, medium);
    g.d_mean[0] = weighted_mean(d1, phi_d1);
    RealField2D off(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) off[k] = d1[k] - g.d_mean[0];
    if (max_abs_real(off) > 1e-14 * std::abs(g.d_mean[0])) g.d_offset[0] = off;
    if (max_abs(matrices.j11) > 0.0) g.j[0] = matrices.j11;
  }
  const auto tables = spectral_tables(grid);
  const bool check = hermitian(g, tables);
  const double dt = plan.dz() / reference_velocity(phi_d1, mix, medium);

  State phi{phi_d1, ComplexField2D(grid)};
  std::vector<Slice> out{{plan.z_start, 0.0, phi_d1}};
  for (int s = 1; s <= plan.n_slices; ++s) {
    const double before = check ? state_norm(phi, 1) : 0.0;
    strang_step(g, tables, dt, phi);
    const double z = plan.z_start + s * plan.dz();
    if (check) check_growth(before, state_norm(phi, 1), z);
    if (should_record(s, plan)) out.push_back({z, s * dt, phi[0]});
  }
  return out;
}

std::vector<PairSlice> propagate_polariton_coupled(
    const PolaritonPair& state, const ControlPair& controls,
    const MediumParams& medium, const PropagationPlan& plan, double t_start) {
  plan.validate();
  if (plan.mode != PropagationMode::in_medium_coupled) {
    throw Error(ErrorCode::invalid_argument, "plan mode must be in_medium_coupled");
  }
  medium.validate();
  controls.validate();
  const auto& grid = controls.grid();
  require_same_grid(state.phi_d1.grid(), grid, "propagate_polariton_coupled");
  require_same_grid(state.phi_d2.grid(), grid, "propagate_polariton_coupled");

  const auto tables = spectral_tables(grid);
  const double dz = plan.dz();
  const double atom = medium.atom_diffusion();

  State phi{state.phi_d1, state.phi_d2};
  double t = t_start;
  std::vector<PairSlice> out{{plan.z_start, t, phi[0], phi[1]}};
  for (int s = 1; s <= plan.n_slices; ++s) {
    const double z0 = plan.z_start + (s - 1) * dz;
    // midpoint rule for dt/dz = 1/v_ref(t)
    const double dt0 = dz / reference_velocity(phi[0], mixing_params(controls, medium, t), medium);
    const double dt = dz / reference_velocity(
        phi[0], mixing_params(controls, medium, t + 0.5 * dt0), medium);
    const double t_mid = t + 0.5 * dt;

    const auto mix = mixing_params(controls, medium, t_mid);
    const auto m = assemble_paraxial_matrices(controls, mix, medium, t_mid,
                                              z0 + 0.5 * dz);
    Generator g;
    g.components = 2;
    const auto d1 = kinetic_coefficient_d1(mix, medium);
    g.d_mean = {weighted_mean(d1, phi[0]), atom};
    RealField2D off(grid);
    for (std::size_t k = 0; k < grid.size(); ++k) off[k] = d1[k] - g.d_mean[0];
    if (max_abs_real(off) > 1e-14 * std::abs(g.d_mean[0])) g.d_offset[0] = off;
    const std::array<const VectorField*, 4> js{&m.j11, &m.j12, &m.j21, &m.j22};
    for (int c = 0; c < 4; ++c) {
      if (max_abs(*js[c]) > 0.0) g.j[c] = *js[c];
    }
    g.u = {m.u11, m.u12, m.u21, m.u22};

    const bool check = hermitian(g, tables);
    const double before = check ? state_norm(phi, 2) : 0.0;
    strang_step(g, tables, dt, phi);
    t += dt;
    const double z = z0 + dz;
    if (check) check_growth(before, state_norm(phi, 2), z);
    if (should_record(s, plan)) out.push_back({z, t, phi[0], phi[1]});
  }
  return out;
}

Matrix2 expm2x2(const Matrix2& m) {
  auto mul = [](const Matrix2& a, const Matrix2& b) -> Matrix2 {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  const double norm1 = std::max(std::abs(m[0]) + std::abs(m[2]),
                                std::abs(m[1]) + std::abs(m[3]));
  if (!std::isfinite(norm1)) {
    throw Error(ErrorCode::invalid_argument, "matrix exponential of a non-finite matrix");
  }
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const Matrix2 a{m[0] * scale, m[1] * scale, m[2] * scale, m[3] * scale};

  // ||a|| <= 0.5: 18 terms reach double precision
  Matrix2 result{1.0, 0.0, 0.0, 1.0};
  Matrix2 term = result;
  for (int n = 1; n <= 18; ++n) {
    term = mul(term, a);
    for (auto& v : term) v /= static_cast<double>(n);
    for (int i = 0; i < 4; ++i) result[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

}  // namespace tripod
