// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dudc/csv.hpp"
#include "dudc/errors.hpp"
#include "dudc/params.hpp"
#include "dudc/version.hpp"

namespace dudc {

/// Linear sweep over one of the supported experiment knobs.
struct SweepSpec {
  std::string name;  ///< lambda_s_ratio | p_s_dbm | alpha
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  bool active() const { return steps > 0; }

  std::vector<double> values() const {
    std::vector<double> v;
    if (steps <= 1) {
      v.push_back(start);
      return v;
    }
    for (int i = 0; i < steps; ++i)
      v.push_back(start + (stop - start) * static_cast<double>(i) / (steps - 1));
    return v;
  }
};

inline SweepSpec parse_sweep(const std::string& text) {
  // name=start:stop:steps
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw invalid_parameter("sweep", "expected name=start:stop:steps");
  SweepSpec s;
  s.name = text.substr(0, eq);
  if (s.name != "lambda_s_ratio" && s.name != "p_s_dbm" && s.name != "alpha")
    throw invalid_parameter("sweep", "parameter must be lambda_s_ratio, p_s_dbm, or alpha");
  const std::string rest = text.substr(eq + 1);
  char c1 = 0, c2 = 0;
  std::istringstream ss(rest);
  if (!(ss >> s.start >> c1 >> s.stop >> c2 >> s.steps) || c1 != ':' || c2 != ':' || s.steps < 1)
    throw invalid_parameter("sweep", "expected name=start:stop:steps with steps >= 1");
  return s;
}

/// Full experiment description: model constants plus run controls. Every key
/// is loadable from a flat `key = value` config file and overridable from the
/// command line.
struct ExperimentConfig {
  NetworkParams params;
  std::uint64_t samples = 100000;  ///< Monte Carlo sample count per estimator (>= 1e4)
  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  std::string format = "csv";
  SweepSpec sweep;                    ///< optional; commands have defaults
  double simplex_tolerance = 1e-9;    ///< gate for the probability-sum check

  void check() const {
    if (samples < 10000) throw invalid_parameter("samples", "must be at least 1e4");
    if (format != "csv") throw invalid_parameter("format", "only 'csv' is supported");
  }
};

/// Applies one `key = value` assignment. `lambda_s_ratio` is resolved against
/// the current lambda_m.
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value) {
  const auto num = [&]() -> double {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str()) throw invalid_parameter(key, "expected a numeric value");
    return v;
  };
  auto& p = cfg.params;
  if (key == "lambda_m") p.lambda_m = num();
  else if (key == "lambda_s") p.lambda_s = num();
  else if (key == "lambda_s_ratio") p.lambda_s = num() * p.lambda_m;
  else if (key == "lambda_d") p.lambda_d = num();
  else if (key == "p_m_dbm") p.p_m_dbm = num();
  else if (key == "p_s_dbm") p.p_s_dbm = num();
  else if (key == "p_d_dbm") p.p_d_dbm = num();
  else if (key == "p0_dbm") p.p0_dbm = num();
  else if (key == "gamma") p.gamma = num();
  else if (key == "alpha") p.alpha = num();
  else if (key == "bandwidth_hz") p.bandwidth_hz = num();
  else if (key == "window_side_m") p.window_side_m = num();
  else if (key == "samples") cfg.samples = static_cast<std::uint64_t>(num());
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num());
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "format") cfg.format = value;
  else if (key == "sweep") cfg.sweep = parse_sweep(value);
  else if (key == "simplex_tolerance") cfg.simplex_tolerance = num();
  else throw invalid_parameter("config", "unknown key '" + key + "'");
}

/// Flat `key = value` file; '#' starts a comment, blank lines ignored.
inline ExperimentConfig parse_config_file(const std::string& path,
                                          ExperimentConfig base = ExperimentConfig{}) {
  std::ifstream in(path);
  if (!in) throw invalid_parameter("config", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw invalid_parameter("config", "expected key = value: " + line);
    apply_config_entry(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return base;
}

/// Provenance block shared by every emitted dataset.
inline std::vector<std::pair<std::string, std::string>> provenance(const ExperimentConfig& cfg) {
  const auto g = detail::format_g17;
  const auto& p = cfg.params;
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("version", version_string);
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("samples", std::to_string(cfg.samples));
  out.emplace_back("lambda_m", g(p.lambda_m));
  out.emplace_back("lambda_s", g(p.lambda_s));
  out.emplace_back("lambda_d", g(p.lambda_d));
  out.emplace_back("p_m_dbm", g(p.p_m_dbm));
  out.emplace_back("p_s_dbm", g(p.p_s_dbm));
  out.emplace_back("p_d_dbm", g(p.p_d_dbm));
  out.emplace_back("p0_dbm", g(p.p0_dbm));
  out.emplace_back("gamma", g(p.gamma));
  out.emplace_back("alpha", g(p.alpha));
  out.emplace_back("bandwidth_hz", g(p.bandwidth_hz));
  out.emplace_back("window_side_m", g(p.window_side_m));
  if (cfg.sweep.active())
    out.emplace_back("sweep", cfg.sweep.name + "=" + g(cfg.sweep.start) + ":" + g(cfg.sweep.stop) +
                                  ":" + std::to_string(cfg.sweep.steps));
  out.emplace_back("simplex_tolerance", g(cfg.simplex_tolerance));
  return out;
}

}  // namespace dudc
