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

// Declarative storage/retrieval runs. See docs/config.md for the schema.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tripod/memory_protocol.hpp"
#include "tripod/mixing.hpp"
#include "tripod/propagator.hpp"

namespace tripod {

enum class ScenarioKind { lambda_to_tripod, tripod_to_lambda, same_controls };

const char* to_string(ScenarioKind kind) noexcept;

struct OutputFormats {
  bool raster = true;
  bool csv = true;
  bool json = true;
};

struct RunConfig {
  std::string name = "run";
  ScenarioKind kind = ScenarioKind::lambda_to_tripod;

  int n = 256;
  double extent = 80.0;

  MediumParams medium;

  double probe_amplitude = 1.0;  // e0
  double probe_rabi_peak = 0.01; // peak |Omega_p| in gamma, linearity guard

  ClosedFormParams beam;          // a, b, sigma_p/s/r, charge, e0 (mirrors probe_amplitude)
  double control_amplitude = 1.0; // A

  double t_store = 0.0;
  double t_retrieve = 100.0;
  double ramp = 10.0;
  std::optional<double> coherence_time;
  double pulse_duration = 62.8;  // 1/gamma
  double sample_length = 509.0;  // lambda

  PropagationPlan plan{0.0, 0.0, 64, 8, PropagationMode::free_space};
  std::filesystem::path output_dir = "out";
  OutputFormats formats;

  /// Non-fatal remarks collected while parsing (e.g. a small grid extent).
  std::vector<std::string> warnings;

  GridSpec grid() const { return make_grid(n, extent); }
  double effective_sigma() const { return beam.effective_sigma(); }
};

/// Parses a YAML document. Syntax errors, unknown keys and ill-typed values
/// throw Error(parse_error) carrying the line; violated invariants throw
/// Error(validation_error) listing every violation, one per line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Same as parse_config after overriding parameters.<key> with `value`.
RunConfig parse_config_with_override(const std::string& text,
                                     const std::string& key, double value);

/// Violations of the config invariants, empty when valid.
std::vector<std::string> validation_errors(const RunConfig& cfg);

struct SliceDiagnostics {
  double z = 0.0;
  std::optional<int> charge;  // empty when the loop hits a zero of the field
  double rms_radius = 0.0;
  double peak_intensity = 0.0;  // relative to the input probe peak
};

struct RunReport {
  std::string name;
  ScenarioKind kind = ScenarioKind::lambda_to_tripod;
  double effective_sigma = 0.0;
  double rayleigh_range = 0.0;
  std::vector<SliceDiagnostics> slices;
  double rms_growth_rate = 0.0;   // (r(z_R) - r(0)) / z_R, interpolated
  double peak_ratio = 0.0;        // max |E_r| / max |E_s|
  AdiabaticityReport adiabaticity;
  DecouplingReport decoupling;
  LinearityGuard linearity;
  bool degraded = false;
  std::vector<std::string> warnings;
};

struct RunResult {
  RunReport report;
  ComplexField2D probe;        // input probe E_s
  ComplexField2D regenerated;  // E_r at z = 0
  std::vector<Slice> slices;
};

/// Runs the pipeline without touching the file system.
RunResult execute_scenario(const RunConfig& cfg);

/// Runs the pipeline and writes the requested outputs to cfg.output_dir.
RunReport run_scenario(const RunConfig& cfg);

/// Deterministic JSON text of the report.
std::string report_to_json(const RunReport& report);

/// Midline profiles z, x, |E|^2 / reference_peak, phase, one block per slice.
/// Throws Error(precondition) on an empty slice list, Error(io_error) when
/// the file cannot be written.
void emit_profile_csv(const std::vector<Slice>& slices,
                      const std::filesystem::path& path,
                      double reference_peak = 1.0);

}  // namespace tripod
