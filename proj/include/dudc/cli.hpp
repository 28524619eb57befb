// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dudc/figures.hpp"
#include "dudc/validation.hpp"

namespace dudc {

/// Exit codes: 0 success, 1 validation/acceptance failure, 2 configuration
/// error. Nothing else is returned.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2 };

namespace detail {

struct CliOptions {
  std::string config_path;
  std::optional<double> lambda_s_ratio, ps_dbm, alpha;
  std::optional<std::uint64_t> seed, samples;
  std::optional<std::string> out_dir, sweep;
};

inline ExperimentConfig resolve_config(const CliOptions& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = parse_config_file(o.config_path);
  if (o.lambda_s_ratio) cfg.params.lambda_s = *o.lambda_s_ratio * cfg.params.lambda_m;
  if (o.ps_dbm) cfg.params.p_s_dbm = *o.ps_dbm;
  if (o.alpha) cfg.params.alpha = *o.alpha;
  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.sweep) cfg.sweep = parse_sweep(*o.sweep);
  cfg.check();
  (void)Model(cfg.params);  // surface parameter errors before any work
  return cfg;
}

inline void emit(const ExperimentConfig& cfg, const FigureDataset& d) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/" + d.figure_id + ".csv";
  write_csv(path, d);
  std::printf("wrote %s (%zu rows)\n", path.c_str(), d.rows.size());
}

}  // namespace detail

/// Command-line entry point shared by the binary and the tests.
inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"decoupled dual-connectivity association and uplink capacity toolkit"};
  app.require_subcommand(1);

  detail::CliOptions opt;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--seed", opt.seed, "master RNG seed");
    cmd->add_option("--samples", opt.samples, "Monte Carlo samples per estimator (>= 1e4)");
    cmd->add_option("--out", opt.out_dir, "output directory for CSV datasets");
    cmd->add_option("--sweep", opt.sweep, "sweep spec: name=start:stop:steps");
    cmd->add_option("--lambda-s-ratio", opt.lambda_s_ratio, "SCell/MCell intensity ratio");
    cmd->add_option("--ps-dbm", opt.ps_dbm, "SCell transmit power [dBm]");
    cmd->add_option("--alpha", opt.alpha, "path-loss exponent");
  };

  auto* c_prob = app.add_subcommand("probabilities", "association probability datasets (fig2, fig3)");
  auto* c_dist = app.add_subcommand("distances", "conditional distance datasets (fig4)");
  auto* c_cap = app.add_subcommand("capacity", "capacity/SIR datasets (fig5a, fig5b, fig6, fig7)");
  auto* c_val = app.add_subcommand("validate", "run the invariant suite and report pass/fail");
  for (auto* c : {c_prob, c_dist, c_cap, c_val}) add_common(c);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::puts(app.help().c_str());
      return exit_ok;
    }
    std::fprintf(stderr, "%s\n", e.what());
    return exit_config_error;
  }

  try {
    const ExperimentConfig cfg = detail::resolve_config(opt);
    if (c_prob->parsed()) {
      detail::emit(cfg, make_fig2(cfg));
      detail::emit(cfg, make_fig3(cfg));
    } else if (c_dist->parsed()) {
      detail::emit(cfg, make_fig4(cfg));
    } else if (c_cap->parsed()) {
      detail::emit(cfg, make_fig5a(cfg));
      detail::emit(cfg, make_fig5b(cfg));
      detail::emit(cfg, make_fig6(cfg));
      detail::emit(cfg, make_fig7(cfg));
    } else if (c_val->parsed()) {
      const ValidationReport rep = run_validation(cfg);
      print_validation(rep);
      return rep.all_pass() ? exit_ok : exit_check_failed;
    }
    return exit_ok;
  } catch (const invalid_parameter& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return exit_config_error;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_check_failed;
  }
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace dudc
