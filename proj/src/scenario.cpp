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

#include "tripod/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tripod/beams.hpp"
#include "tripod/field_io.hpp"

namespace tripod {

const char* to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::lambda_to_tripod: return "lambda_to_tripod";
    case ScenarioKind::tripod_to_lambda: return "tripod_to_lambda";
    case ScenarioKind::same_controls: return "same_controls";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void parse_fail(const YAML::Node& node, const std::string& what) {
  std::ostringstream os;
  os << what;
  const auto mark = node.Mark();
  if (mark.line >= 0) os << " (line " << mark.line + 1 << ")";
  throw Error(ErrorCode::parse_error, os.str());
}

void check_keys(const YAML::Node& map, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) parse_fail(map, "'" + section + "' must be a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      parse_fail(kv.first, "unknown key '" + key + "' in '" + section + "'");
    }
  }
}

template <class T>
void read(const YAML::Node& map, const char* key, const std::string& section,
          T& out) {
  const auto node = map[key];
  if (!node) return;
  try {
    out = node.as<T>();
  } catch (const YAML::Exception&) {
    parse_fail(node, "invalid value for '" + section + "." + key + "'");
  }
}

void read_optional(const YAML::Node& map, const char* key,
                   const std::string& section, std::optional<double>& out) {
  const auto node = map[key];
  if (!node || node.IsNull()) return;
  double v = 0.0;
  read(map, key, section, v);
  out = v;
}

ScenarioKind parse_kind(const YAML::Node& node) {
  const auto s = node.as<std::string>();
  if (s == "lambda_to_tripod") return ScenarioKind::lambda_to_tripod;
  if (s == "tripod_to_lambda") return ScenarioKind::tripod_to_lambda;
  if (s == "same_controls") return ScenarioKind::same_controls;
  parse_fail(node, "unknown scenario '" + s +
                       "' (expected lambda_to_tripod, tripod_to_lambda or "
                       "same_controls)");
}

RunConfig from_yaml(const YAML::Node& root) {
  RunConfig cfg;
  if (!root || root.IsNull()) return cfg;
  check_keys(root, "<root>",
             {"name", "scenario", "grid", "medium", "probe", "parameters",
              "schedule", "propagation", "output"});
  read(root, "name", "<root>", cfg.name);
  if (root["scenario"]) cfg.kind = parse_kind(root["scenario"]);

  if (const auto g = root["grid"]) {
    check_keys(g, "grid", {"n", "extent"});
    read(g, "n", "grid", cfg.n);
    read(g, "extent", "grid", cfg.extent);
  }
  if (const auto m = root["medium"]) {
    check_keys(m, "medium",
               {"g_sqrt_n", "gamma", "omega01", "omega21", "omega31",
                "recoil_frequency", "optical_frequency", "k", "k_c"});
    auto& md = cfg.medium;
    read(m, "g_sqrt_n", "medium", md.g_sqrt_n);
    read(m, "gamma", "medium", md.gamma);
    read(m, "omega01", "medium", md.omega01);
    read(m, "omega21", "medium", md.omega21);
    read(m, "omega31", "medium", md.omega31);
    read(m, "recoil_frequency", "medium", md.recoil_frequency);
    read(m, "optical_frequency", "medium", md.optical_frequency);
    read(m, "k", "medium", md.k);
    read(m, "k_c", "medium", md.k_c);
  }
  if (const auto p = root["probe"]) {
    check_keys(p, "probe", {"amplitude", "rabi_peak"});
    read(p, "amplitude", "probe", cfg.probe_amplitude);
    read(p, "rabi_peak", "probe", cfg.probe_rabi_peak);
  }
  if (const auto p = root["parameters"]) {
    check_keys(p, "parameters",
               {"a", "b", "sigma", "sigma_p", "sigma_s", "sigma_r", "charge",
                "control_amplitude"});
    double sigma = 10.0;
    read(p, "sigma", "parameters", sigma);
    cfg.beam.sigma_p = cfg.beam.sigma_s = cfg.beam.sigma_r = sigma;
    read(p, "a", "parameters", cfg.beam.a);
    read(p, "b", "parameters", cfg.beam.b);
    read(p, "sigma_p", "parameters", cfg.beam.sigma_p);
    read(p, "sigma_s", "parameters", cfg.beam.sigma_s);
    read(p, "sigma_r", "parameters", cfg.beam.sigma_r);
    read(p, "charge", "parameters", cfg.beam.charge);
    read(p, "control_amplitude", "parameters", cfg.control_amplitude);
  }
  if (const auto s = root["schedule"]) {
    check_keys(s, "schedule",
               {"t_store", "t_retrieve", "ramp", "coherence_time",
                "pulse_duration", "sample_length"});
    read(s, "t_store", "schedule", cfg.t_store);
    read(s, "t_retrieve", "schedule", cfg.t_retrieve);
    read(s, "ramp", "schedule", cfg.ramp);
    read_optional(s, "coherence_time", "schedule", cfg.coherence_time);
    read(s, "pulse_duration", "schedule", cfg.pulse_duration);
    read(s, "sample_length", "schedule", cfg.sample_length);
  }

  std::optional<double> z_end;
  double rayleigh_ranges = 2.0;
  if (const auto p = root["propagation"]) {
    check_keys(p, "propagation",
               {"z_start", "z_end", "rayleigh_ranges", "n_slices",
                "record_every"});
    read(p, "z_start", "propagation", cfg.plan.z_start);
    read_optional(p, "z_end", "propagation", z_end);
    read(p, "rayleigh_ranges", "propagation", rayleigh_ranges);
    read(p, "n_slices", "propagation", cfg.plan.n_slices);
    read(p, "record_every", "propagation", cfg.plan.record_every);
    if (z_end && p["rayleigh_ranges"]) {
      parse_fail(p, "give either 'z_end' or 'rayleigh_ranges', not both");
    }
  }
  if (const auto o = root["output"]) {
    check_keys(o, "output", {"directory", "formats"});
    std::string dir = cfg.output_dir.string();
    read(o, "directory", "output", dir);
    cfg.output_dir = dir;
    if (const auto f = o["formats"]) {
      if (!f.IsSequence()) parse_fail(f, "'output.formats' must be a list");
      cfg.formats = {false, false, false};
      for (const auto& item : f) {
        const auto s = item.as<std::string>();
        if (s == "raster") cfg.formats.raster = true;
        else if (s == "csv") cfg.formats.csv = true;
        else if (s == "json") cfg.formats.json = true;
        else parse_fail(item, "unknown output format '" + s + "'");
      }
    }
  }
  cfg.beam.e0 = cfg.probe_amplitude;

  // z_end defaults to a number of Rayleigh ranges of the retrieved beam; it
  // stays at z_start when sigma is invalid so validation reports the cause.
  if (z_end) {
    cfg.plan.z_end = *z_end;
  } else {
    try {
      const double s = cfg.beam.effective_sigma();
      cfg.plan.z_end = cfg.plan.z_start + rayleigh_ranges * std::numbers::pi * s * s;
    } catch (const Error&) {
      cfg.plan.z_end = cfg.plan.z_start;
    }
  }
  return cfg;
}

RunConfig finish(RunConfig cfg) {
  const auto errors = validation_errors(cfg);
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw Error(ErrorCode::validation_error, msg);
  }
  const double widest =
      std::max({cfg.beam.sigma_p, cfg.beam.sigma_s, cfg.beam.sigma_r});
  if (cfg.extent < 4.0 * widest) {
    std::ostringstream os;
    os << "grid extent " << cfg.extent << " is below 4x the widest beam ("
       << widest << "); periodic wrap-around may distort the profiles";
    cfg.warnings.push_back(os.str());
  }
  return cfg;
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::parse_error,
                "syntax error at line " + std::to_string(e.mark.line + 1) +
                    ": " + e.msg);
  }
}

RunConfig parse_node(const YAML::Node& root) {
  try {
    return finish(from_yaml(root));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

}  // namespace

std::vector<std::string> validation_errors(const RunConfig& cfg) {
  std::vector<std::string> out;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
  };
  need(cfg.n >= 16 && (cfg.n & (cfg.n - 1)) == 0,
       "grid.n must be a power of two >= 16");
  need(cfg.extent > 0.0, "grid.extent must be positive");
  const auto& b = cfg.beam;
  need(b.sigma_p > 0.0, "parameters.sigma_p must be positive");
  need(b.sigma_s > 0.0, "parameters.sigma_s must be positive");
  need(b.sigma_r > 0.0, "parameters.sigma_r must be positive");
  if (b.sigma_p > 0.0 && b.sigma_s > 0.0 && b.sigma_r > 0.0) {
    const double inv2 = 1.0 / (b.sigma_p * b.sigma_p) +
                        1.0 / (b.sigma_r * b.sigma_r) -
                        1.0 / (b.sigma_s * b.sigma_s);
    need(inv2 > 0.0, "sigma_p^-2 + sigma_r^-2 - sigma_s^-2 must be positive");
  }
  need(b.a > 0.0, "parameters.a must be positive");
  need(b.b >= 0.0, "parameters.b must be >= 0");
  need(std::abs(b.charge) <= BeamSpec::kMaxCharge,
       "parameters.charge must lie in [-8, 8]");
  need(cfg.control_amplitude > 0.0,
       "parameters.control_amplitude must be positive");
  need(std::isfinite(cfg.probe_amplitude) && cfg.probe_amplitude != 0.0,
       "probe.amplitude must be finite and nonzero");
  need(cfg.probe_rabi_peak >= 0.0, "probe.rabi_peak must be >= 0");
  need(cfg.t_retrieve > cfg.t_store, "schedule.t_retrieve must exceed t_store");
  need(cfg.ramp > 0.0, "schedule.ramp must be positive");
  need(!cfg.coherence_time || *cfg.coherence_time > 0.0,
       "schedule.coherence_time must be positive");
  need(cfg.pulse_duration > 0.0, "schedule.pulse_duration must be positive");
  need(cfg.sample_length > 0.0, "schedule.sample_length must be positive");
  need(cfg.plan.z_end > cfg.plan.z_start,
       "propagation.z_end must exceed z_start");
  need(cfg.plan.n_slices >= 1, "propagation.n_slices must be >= 1");
  need(cfg.plan.record_every >= 1, "propagation.record_every must be >= 1");
  try {
    cfg.medium.validate();
  } catch (const Error& e) {
    out.push_back(std::string("medium: ") + e.what());
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  return parse_node(load_yaml(text));
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return parse_config(os.str());
}

RunConfig parse_config_with_override(const std::string& text,
                                     const std::string& key, double value) {
  static const std::set<std::string> kKeys{
      "a", "b", "sigma", "sigma_p", "sigma_s", "sigma_r", "charge",
      "control_amplitude"};
  if (!kKeys.count(key)) {
    throw Error(ErrorCode::invalid_argument,
                "cannot sweep '" + key + "' (not a parameters.* key)");
  }
  auto root = load_yaml(text);
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (key == "charge") {
    if (value != std::round(value)) {
      throw Error(ErrorCode::invalid_argument, "charge must be an integer");
    }
    root["parameters"][key] = static_cast<int>(value);
  } else {
    root["parameters"][key] = value;
  }
  return parse_node(root);
}

// ---------------------------------------------------------------------------
// Running

namespace {

RetrievalCase retrieval_case(ScenarioKind kind) {
  return kind == ScenarioKind::tripod_to_lambda ? RetrievalCase::tripod_to_lambda
                                                : RetrievalCase::lambda_to_tripod;
}

std::pair<ControlPair, ControlPair> build_controls(const RunConfig& cfg,
                                                   const GridSpec& grid) {
  ControlPair s, r;
  const double amp = cfg.control_amplitude;
  if (cfg.kind == ScenarioKind::same_controls) {
    const double inv2 = 1.0 / (cfg.beam.sigma_s * cfg.beam.sigma_s);
    const int l = cfg.beam.charge;
    const double norm = std::pow(cfg.beam.sigma_s, std::abs(l));
    s.profile_c2 = sample(grid, [&](double x, double y) -> cplx {
      return amp * std::exp(-(x * x + y * y) * inv2);
    });
    s.profile_c3 = sample(grid, [&](double x, double y) {
      const cplx u = l >= 0 ? cplx(x, y) : cplx(x, -y);
      return amp * std::pow(u, std::abs(l)) / norm *
             std::exp(-(x * x + y * y) * inv2);
    });
    r.profile_c2 = cfg.beam.b * s.profile_c2;
    r.profile_c3 = cfg.beam.b * s.profile_c3;
  } else {
    s = storing_controls(retrieval_case(cfg.kind), cfg.beam, amp, grid);
    r = retrieving_controls(retrieval_case(cfg.kind), cfg.beam, amp, grid);
  }
  // switch-off ends at t_store, switch-on starts at t_retrieve
  s.envelope_c2 = s.envelope_c3 =
      Envelope::ramp(cfg.t_store - cfg.ramp, cfg.ramp, 1.0, 0.0);
  r.envelope_c2 = r.envelope_c3 =
      Envelope::ramp(cfg.t_retrieve, cfg.ramp, 0.0, 1.0);
  return {std::move(s), std::move(r)};
}

std::optional<int> slice_charge(const ComplexField2D& f) {
  try {
    const double radius = std::max(0.5 * rms_radius(f), 4.0 * f.grid().dx());
    return vortex_charge(f, radius);
  } catch (const Error&) {
    return std::nullopt;
  }
}

double peak_intensity(const ComplexField2D& f) {
  const double m = max_abs(f);
  return m * m;
}

// In-medium length of a pulse of the given duration, at the group velocity
// where the retrieving controls peak (the same point decoupling_report uses).
double in_medium_pulse_length(const ControlPair& controls,
                              const MediumParams& medium, double duration) {
  const auto mix = mixing_params(controls.profile_c2, controls.profile_c3, medium);
  const auto gv = group_velocity_d1(mix, medium);
  std::size_t at = 0;
  for (std::size_t k = 1; k < mix.omega_c.size(); ++k) {
    if (mix.omega_c[k] > mix.omega_c[at]) at = k;
  }
  return duration * gv.v_g1[at] * medium.speed_of_light();
}

double interpolated_rms(const std::vector<SliceDiagnostics>& d, double z) {
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (d[k].z >= z) {
      const double w = (z - d[k - 1].z) / (d[k].z - d[k - 1].z);
      return (1.0 - w) * d[k - 1].rms_radius + w * d[k].rms_radius;
    }
  }
  return d.back().rms_radius;
}

}  // namespace

RunResult execute_scenario(const RunConfig& cfg) {
  const auto errors = validation_errors(cfg);
  if (!errors.empty()) {
    throw Error(ErrorCode::validation_error, "invalid configuration: " + errors.front());
  }
  const auto grid = cfg.grid();
  auto beam = cfg.beam;
  beam.e0 = cfg.probe_amplitude;
  const auto [storing, retrieving] = build_controls(cfg, grid);

  RunResult res;
  res.probe = gaussian_probe(beam, grid);
  const auto protocol =
      run_memory_protocol(res.probe, storing, retrieving, cfg.medium,
                          cfg.probe_rabi_peak, cfg.t_retrieve - cfg.t_store,
                          cfg.coherence_time);
  res.regenerated = protocol.regenerated;

  auto plan = cfg.plan;
  plan.mode = PropagationMode::free_space;
  res.slices = propagate_free_space(res.regenerated, plan);

  auto& rep = res.report;
  rep.name = cfg.name;
  rep.kind = cfg.kind;
  rep.effective_sigma = cfg.effective_sigma();
  rep.rayleigh_range = std::numbers::pi * rep.effective_sigma * rep.effective_sigma;
  const double probe_peak = peak_intensity(res.probe);
  for (const auto& s : res.slices) {
    SliceDiagnostics d;
    d.z = s.z;
    d.charge = slice_charge(s.field);
    d.rms_radius = rms_radius(s.field);
    d.peak_intensity = peak_intensity(s.field) / probe_peak;
    rep.slices.push_back(d);
  }
  const double z_rate =
      std::min(rep.rayleigh_range, rep.slices.back().z - rep.slices.front().z);
  rep.rms_growth_rate =
      (interpolated_rms(rep.slices, rep.slices.front().z + z_rate) -
       rep.slices.front().rms_radius) / z_rate;
  rep.peak_ratio = max_abs(res.regenerated) / max_abs(res.probe);

  double omega_peak = 0.0;
  const auto mix_s =
      mixing_params(storing.profile_c2, storing.profile_c3, cfg.medium);
  for (double v : mix_s.omega_c) omega_peak = std::max(omega_peak, v);
  rep.adiabaticity = adiabaticity_check(cfg.medium, omega_peak,
                                        cfg.pulse_duration, cfg.sample_length);
  const double pulse_length =
      in_medium_pulse_length(retrieving, cfg.medium, cfg.pulse_duration);
  if (pulse_length > 0.0 && std::isfinite(pulse_length)) {
    rep.decoupling = decoupling_report(retrieving, cfg.medium, pulse_length);
  }
  rep.linearity = protocol.guard;
  rep.degraded = !protocol.guard.satisfied;
  rep.warnings = cfg.warnings;
  if (rep.degraded) {
    std::ostringstream os;
    os << "probe Rabi frequency reaches " << rep.linearity.worst_ratio
       << " of Omega_c (limit 0.1); results outside the linear regime";
    rep.warnings.push_back(os.str());
  }
  return res;
}

RunReport run_scenario(const RunConfig& cfg) {
  auto res = execute_scenario(cfg);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::io_error,
                "cannot create " + cfg.output_dir.string() + ": " + ec.message());
  }
  if (cfg.formats.raster) {
    nlohmann::ordered_json manifest;
    manifest["name"] = cfg.name;
    manifest["format"] = "complex128-le-rowmajor";
    auto& list = manifest["slices"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < res.slices.size(); ++k) {
      std::ostringstream file;
      file << "slice_" << std::setw(4) << std::setfill('0') << k << ".c128";
      write_raster(res.slices[k].field, cfg.output_dir / file.str());
      list.push_back({{"index", k}, {"z", res.slices[k].z}, {"raster", file.str()}});
    }
    std::ofstream os(cfg.output_dir / "manifest.json");
    if (!os) throw Error(ErrorCode::io_error, "cannot write manifest.json");
    os << manifest.dump(2) << '\n';
  }
  if (cfg.formats.csv) {
    emit_profile_csv(res.slices, cfg.output_dir / "profile.csv",
                     peak_intensity(res.probe));
  }
  if (cfg.formats.json) {
    std::ofstream os(cfg.output_dir / "report.json");
    if (!os) throw Error(ErrorCode::io_error, "cannot write report.json");
    os << report_to_json(res.report);
  }
  return res.report;
}

std::string report_to_json(const RunReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["name"] = r.name;
  j["scenario"] = to_string(r.kind);
  j["effective_sigma"] = r.effective_sigma;
  j["rayleigh_range"] = r.rayleigh_range;
  j["rms_growth_rate"] = r.rms_growth_rate;
  j["peak_ratio"] = r.peak_ratio;
  j["degraded"] = r.degraded;
  j["linearity"] = {{"worst_ratio", r.linearity.worst_ratio},
                    {"satisfied", r.linearity.satisfied}};
  j["adiabaticity"] = {{"ratio", r.adiabaticity.ratio},
                       {"polariton_lifetime", r.adiabaticity.polariton_lifetime},
                       {"transit_time", r.adiabaticity.transit_time},
                       {"v_rad", r.adiabaticity.v_rad}};
  const auto& d = r.decoupling;
  j["decoupling"] = {{"decoupled", d.decoupled},
                     {"shared_envelope", d.shared_envelope},
                     {"max_temporal_coupling", d.max_temporal_coupling},
                     {"pulse_duration", d.pulse_duration},
                     {"recoil_pulse_product", d.recoil_pulse_product},
                     {"offdiagonal_ratio", d.offdiagonal_ratio},
                     {"offdiagonal_phase", d.offdiagonal_phase}};
  auto& slices = j["slices"] = json::array();
  for (const auto& s : r.slices) {
    json e;
    e["z"] = s.z;
    e["charge"] = s.charge ? json(*s.charge) : json(nullptr);
    e["rms_radius"] = s.rms_radius;
    e["peak_intensity"] = s.peak_intensity;
    slices.push_back(std::move(e));
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

void emit_profile_csv(const std::vector<Slice>& slices,
                      const std::filesystem::path& path,
                      double reference_peak) {
  if (slices.empty()) {
    throw Error(ErrorCode::precondition, "no slices to write");
  }
  if (!(reference_peak > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "reference peak must be positive");
  }
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  os << "z_lambda,x_lambda,intensity_rel,phase_rad\n";
  os << std::setprecision(17);
  for (const auto& s : slices) {
    const auto& g = s.field.grid();
    const int mid = g.n() / 2;
    for (int i = 0; i < g.n(); ++i) {
      const auto v = s.field(i, mid);
      os << s.z << ',' << g.coord(i) << ',' << std::norm(v) / reference_peak
         << ',' << std::arg(v) << '\n';
    }
  }
  if (!os) throw Error(ErrorCode::io_error, "write failed: " + path.string());
}

}  // namespace tripod
