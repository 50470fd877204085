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

// tripod: run storage/retrieval scenarios from YAML configs.
//
//   tripod run configs/vortex_transfer.yaml --out out/vortex_transfer
//   tripod check configs/phase_conjugation_b3.yaml
//   tripod sweep configs/phase_conjugation_b3.yaml --param b --values 3,10,30 --out out/phase_conjugation
//
// Exit status: 0 ok, 1 invalid config or usage, 2 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tripod/tripod.h"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct ConfigDeleter {
  void operator()(tripod_config* c) const { tripod_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(tripod_report* r) const { tripod_report_destroy(r); }
};
using ConfigPtr = std::unique_ptr<tripod_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<tripod_report, ReportDeleter>;

int fail(tripod_status st) {
  std::cerr << "error (" << tripod_status_string(st) << "): "
            << tripod_last_error() << '\n';
  return st == TRIPOD_PARSE_ERROR || st == TRIPOD_VALIDATION_ERROR ? kExitInvalid
                                                                    : kExitRuntime;
}

void print_warnings(const tripod_config* cfg) {
  for (size_t k = 0; k < tripod_config_warning_count(cfg); ++k) {
    std::cerr << "warning: " << tripod_config_warning(cfg, k) << '\n';
  }
}

int load(const std::string& path, ConfigPtr& out) {
  tripod_config* raw = nullptr;
  const auto st = tripod_config_load(path.c_str(), &raw);
  if (st != TRIPOD_OK) return fail(st);
  out.reset(raw);
  print_warnings(raw);
  return 0;
}

int run_one(const tripod_config* cfg, ReportPtr& out) {
  tripod_report* raw = nullptr;
  const auto st = tripod_run(cfg, &raw);
  if (st != TRIPOD_OK) return fail(st);
  out.reset(raw);
  if (tripod_report_degraded(raw)) {
    std::cerr << "warning: run marked degraded (linearity guard violated)\n";
  }
  return 0;
}

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Storage and retrieval of light in tripod atoms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tripod_version()));

  std::string config_path;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "run a scenario and write its outputs");
  run->add_option("config", config_path, "YAML config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides the config)");

  auto* check = app.add_subcommand("check", "validate a config without running it");
  check->add_option("config", config_path, "YAML config")->required()->check(CLI::ExistingFile);

  std::string param;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "run a scenario for several values of one parameter");
  sweep->add_option("config", config_path, "YAML config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "parameters.* key to vary (a, b, sigma, ...)")->required();
  sweep->add_option("--values", values, "comma separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_dir, "output root; one subdirectory per value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  ConfigPtr cfg;
  if (const int rc = load(config_path, cfg)) return rc;

  if (*check) {
    std::cout << "ok: " << tripod_config_name(cfg.get()) << '\n';
    return 0;
  }

  if (*run) {
    if (!out_dir.empty()) {
      const auto st = tripod_config_set_output_dir(cfg.get(), out_dir.c_str());
      if (st != TRIPOD_OK) return fail(st);
    }
    ReportPtr report;
    if (const int rc = run_one(cfg.get(), report)) return rc;
    std::cout << tripod_report_json(report.get());
    return 0;
  }

  // sweep
  const std::filesystem::path root = out_dir.empty() ? "sweep" : out_dir;
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) {
    std::cerr << "error: cannot create " << root << ": " << ec.message() << '\n';
    return kExitRuntime;
  }
  std::ofstream table(root / "sweep.csv");
  if (!table) {
    std::cerr << "error: cannot write " << (root / "sweep.csv") << '\n';
    return kExitRuntime;
  }
  table << param << ",rms_growth_rate,peak_ratio,degraded\n";
  table << std::setprecision(17);
  std::cout << param << ",rms_growth_rate,peak_ratio,degraded\n";
  for (double v : values) {
    tripod_config* raw = nullptr;
    auto st = tripod_config_with_parameter(cfg.get(), param.c_str(), v, &raw);
    if (st != TRIPOD_OK) return fail(st);
    ConfigPtr variant(raw);
    const auto dir = root / (param + "_" + format_value(v));
    st = tripod_config_set_output_dir(variant.get(), dir.string().c_str());
    if (st != TRIPOD_OK) return fail(st);
    ReportPtr report;
    if (const int rc = run_one(variant.get(), report)) return rc;
    const double rate = tripod_report_rms_growth_rate(report.get());
    const double peak = tripod_report_peak_ratio(report.get());
    const int degraded = tripod_report_degraded(report.get());
    table << v << ',' << rate << ',' << peak << ',' << degraded << '\n';
    std::cout << v << ',' << rate << ',' << peak << ',' << degraded << '\n';
  }
  return 0;
}
