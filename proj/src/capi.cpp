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

#include "tripod/tripod.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "tripod/beams.hpp"
#include "tripod/coupling.hpp"
#include "tripod/grid.hpp"
#include "tripod/propagator.hpp"
#include "tripod/scenario.hpp"

struct tripod_grid {
  tripod::GridSpec spec;
};

struct tripod_field {
  tripod::ComplexField2D field;
};

struct tripod_slices {
  std::vector<tripod::Slice> slices;
};

struct tripod_config {
  std::string text;
  tripod::RunConfig cfg;
};

struct tripod_report {
  tripod::RunReport report;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

tripod_status status_of(tripod::ErrorCode code) {
  using tripod::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return TRIPOD_INVALID_ARGUMENT;
    case ErrorCode::degenerate_field: return TRIPOD_DEGENERATE_FIELD;
    case ErrorCode::grid_mismatch: return TRIPOD_GRID_MISMATCH;
    case ErrorCode::division_by_zero: return TRIPOD_DIVISION_BY_ZERO;
    case ErrorCode::ratio_drift: return TRIPOD_RATIO_DRIFT;
    case ErrorCode::instability: return TRIPOD_INSTABILITY;
    case ErrorCode::parse_error: return TRIPOD_PARSE_ERROR;
    case ErrorCode::validation_error: return TRIPOD_VALIDATION_ERROR;
    case ErrorCode::io_error: return TRIPOD_IO_ERROR;
    case ErrorCode::precondition: return TRIPOD_PRECONDITION;
  }
  return TRIPOD_INTERNAL;
}

template <class Fn>
tripod_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return TRIPOD_OK;
  } catch (const tripod::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return TRIPOD_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw tripod::Error(tripod::ErrorCode::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* tripod_version(void) { return "0.1.0"; }

const char* tripod_status_string(tripod_status status) {
  switch (status) {
    case TRIPOD_OK: return "ok";
    case TRIPOD_INVALID_ARGUMENT: return "invalid argument";
    case TRIPOD_DEGENERATE_FIELD: return "degenerate field";
    case TRIPOD_GRID_MISMATCH: return "grid mismatch";
    case TRIPOD_DIVISION_BY_ZERO: return "division by zero";
    case TRIPOD_RATIO_DRIFT: return "control ratio drift";
    case TRIPOD_INSTABILITY: return "instability";
    case TRIPOD_PARSE_ERROR: return "parse error";
    case TRIPOD_VALIDATION_ERROR: return "validation error";
    case TRIPOD_IO_ERROR: return "i/o error";
    case TRIPOD_PRECONDITION: return "precondition violated";
    case TRIPOD_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tripod_last_error(void) { return g_last_error.c_str(); }

tripod_status tripod_grid_create(int n, double extent, tripod_grid** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new tripod_grid{tripod::make_grid(n, extent)};
  });
}

void tripod_grid_destroy(tripod_grid* grid) { delete grid; }

int tripod_grid_n(const tripod_grid* grid) { return grid ? grid->spec.n() : 0; }

double tripod_grid_extent(const tripod_grid* grid) {
  return grid ? grid->spec.extent() : 0.0;
}

tripod_status tripod_field_from_values(const tripod_grid* grid,
                                       const double* values, size_t count,
                                       tripod_field** out) {
  return guarded([&] {
    require(grid && values && out, "arguments must not be NULL");
    require(count == 2 * grid->spec.size(), "value count must be 2 n^2");
    std::vector<tripod::cplx> v(grid->spec.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = {values[2 * k], values[2 * k + 1]};
    *out = new tripod_field{tripod::ComplexField2D(grid->spec, std::move(v))};
  });
}

tripod_status tripod_field_beam(const tripod_grid* grid, double amplitude,
                                double width, int charge, tripod_field** out) {
  return guarded([&] {
    require(grid && out, "arguments must not be NULL");
    const auto spec = charge == 0
                          ? tripod::BeamSpec::gaussian(amplitude, width)
                          : tripod::BeamSpec::laguerre_gauss(amplitude, width, charge);
    *out = new tripod_field{tripod::render_beam(spec, grid->spec)};
  });
}

void tripod_field_destroy(tripod_field* field) { delete field; }

tripod_status tripod_field_values(const tripod_field* field, double* values,
                                  size_t count) {
  return guarded([&] {
    require(field && values, "arguments must not be NULL");
    require(count == 2 * field->field.size(), "value count must be 2 n^2");
    for (std::size_t k = 0; k < field->field.size(); ++k) {
      values[2 * k] = field->field[k].real();
      values[2 * k + 1] = field->field[k].imag();
    }
  });
}

tripod_status tripod_field_norm(const tripod_field* field, double* out) {
  return guarded([&] {
    require(field && out, "arguments must not be NULL");
    *out = tripod::norm_sq(field->field);
  });
}

tripod_status tripod_field_rms_radius(const tripod_field* field, double* out) {
  return guarded([&] {
    require(field && out, "arguments must not be NULL");
    *out = tripod::rms_radius(field->field);
  });
}

tripod_status tripod_field_vortex_charge(const tripod_field* field,
                                         double radius, int* out) {
  return guarded([&] {
    require(field && out, "arguments must not be NULL");
    *out = tripod::vortex_charge(field->field, radius);
  });
}

tripod_status tripod_propagate_free_space(const tripod_field* e0, double z_end,
                                          int n_slices, int record_every,
                                          tripod_slices** out) {
  return guarded([&] {
    require(e0 && out, "arguments must not be NULL");
    const tripod::PropagationPlan plan{0.0, z_end, n_slices, record_every,
                                       tripod::PropagationMode::free_space};
    *out = new tripod_slices{tripod::propagate_free_space(e0->field, plan)};
  });
}

void tripod_slices_destroy(tripod_slices* slices) { delete slices; }

size_t tripod_slices_count(const tripod_slices* slices) {
  return slices ? slices->slices.size() : 0;
}

tripod_status tripod_slices_z(const tripod_slices* slices, size_t index,
                              double* out) {
  return guarded([&] {
    require(slices && out, "arguments must not be NULL");
    require(index < slices->slices.size(), "slice index out of range");
    *out = slices->slices[index].z;
  });
}

tripod_status tripod_slices_field(const tripod_slices* slices, size_t index,
                                  tripod_field** out) {
  return guarded([&] {
    require(slices && out, "arguments must not be NULL");
    require(index < slices->slices.size(), "slice index out of range");
    *out = new tripod_field{slices->slices[index].field};
  });
}

tripod_status tripod_adiabaticity_ratio(double sample_length, double v_rad,
                                        double gamma, double omega_c,
                                        double tau, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = tripod::adiabaticity_ratio(sample_length, v_rad, gamma, omega_c, tau)
               .ratio;
  });
}

tripod_status tripod_config_parse(const char* text, tripod_config** out) {
  return guarded([&] {
    require(text && out, "arguments must not be NULL");
    *out = new tripod_config{text, tripod::parse_config(text)};
  });
}

tripod_status tripod_config_load(const char* path, tripod_config** out) {
  return guarded([&] {
    require(path && out, "arguments must not be NULL");
    std::ifstream is(path);
    if (!is) {
      throw tripod::Error(tripod::ErrorCode::io_error,
                          std::string("cannot read ") + path);
    }
    std::ostringstream os;
    os << is.rdbuf();
    *out = new tripod_config{os.str(), tripod::parse_config(os.str())};
  });
}

tripod_status tripod_config_with_parameter(const tripod_config* cfg,
                                           const char* key, double value,
                                           tripod_config** out) {
  return guarded([&] {
    require(cfg && key && out, "arguments must not be NULL");
    auto parsed = tripod::parse_config_with_override(cfg->text, key, value);
    parsed.output_dir = cfg->cfg.output_dir;
    *out = new tripod_config{cfg->text, std::move(parsed)};
  });
}

tripod_status tripod_config_set_output_dir(tripod_config* cfg, const char* dir) {
  return guarded([&] {
    require(cfg && dir, "arguments must not be NULL");
    cfg->cfg.output_dir = dir;
  });
}

void tripod_config_destroy(tripod_config* cfg) { delete cfg; }

const char* tripod_config_name(const tripod_config* cfg) {
  return cfg ? cfg->cfg.name.c_str() : "";
}

size_t tripod_config_warning_count(const tripod_config* cfg) {
  return cfg ? cfg->cfg.warnings.size() : 0;
}

const char* tripod_config_warning(const tripod_config* cfg, size_t index) {
  if (!cfg || index >= cfg->cfg.warnings.size()) return "";
  return cfg->cfg.warnings[index].c_str();
}

tripod_status tripod_run(const tripod_config* cfg, tripod_report** out) {
  return guarded([&] {
    require(cfg && out, "arguments must not be NULL");
    auto report = tripod::run_scenario(cfg->cfg);
    auto json = tripod::report_to_json(report);
    *out = new tripod_report{std::move(report), std::move(json)};
  });
}

void tripod_report_destroy(tripod_report* report) { delete report; }

const char* tripod_report_json(const tripod_report* report) {
  return report ? report->json.c_str() : "";
}

int tripod_report_degraded(const tripod_report* report) {
  return report && report->report.degraded ? 1 : 0;
}

double tripod_report_rms_growth_rate(const tripod_report* report) {
  return report ? report->report.rms_growth_rate : 0.0;
}

double tripod_report_peak_ratio(const tripod_report* report) {
  return report ? report->report.peak_ratio : 0.0;
}

}  // extern "C"
