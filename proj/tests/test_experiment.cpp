// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "dudc/cli.hpp"
#include "dudc/csv.hpp"
#include "dudc/experiment.hpp"
#include "dudc/figures.hpp"
#include "dudc/validation.hpp"

using namespace dudc;
namespace fs = std::filesystem;

namespace {

ExperimentConfig fast_config() {
  ExperimentConfig cfg;
  cfg.samples = 10000;
  return cfg;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "dudc_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

std::size_t column_index(const FigureDataset& d, const std::string& name) {
  for (std::size_t i = 0; i < d.columns.size(); ++i)
    if (d.columns[i] == name) return i;
  throw std::runtime_error("missing column " + name);
}

}  // namespace

TEST_CASE("config file parsing") {
  const std::string path = write_temp("ok.cfg",
                                      "# comment line\n"
                                      "lambda_m = 1.47e-5\n"
                                      "lambda_s_ratio = 2   # ratio resolves against lambda_m\n"
                                      "p_s_dbm = 28\n"
                                      "samples = 20000\n"
                                      "seed = 99\n"
                                      "sweep = lambda_s_ratio=1:10:4\n");
  const ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.params.lambda_s == 2 * 1.47e-5);
  CHECK(cfg.params.p_s_dbm == 28.0);
  CHECK(cfg.samples == 20000);
  CHECK(cfg.seed == 99);
  CHECK(cfg.sweep.name == "lambda_s_ratio");
  CHECK(cfg.sweep.steps == 4);

  CHECK_THROWS_AS(parse_config_file(write_temp("bad.cfg", "unknown_thing = 1\n")),
                  invalid_parameter);
  CHECK_THROWS_AS(parse_config_file(write_temp("bad2.cfg", "just a line\n")), invalid_parameter);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/sure.cfg"), invalid_parameter);
}

TEST_CASE("sweep parsing") {
  const SweepSpec s = parse_sweep("p_s_dbm=24:36:5");
  CHECK(s.values() == std::vector<double>{24.0, 27.0, 30.0, 33.0, 36.0});
  CHECK(parse_sweep("alpha=3:3:1").values() == std::vector<double>{3.0});
  CHECK_THROWS_AS(parse_sweep("bogus=1:2:3"), invalid_parameter);
  CHECK_THROWS_AS(parse_sweep("alpha=1:2"), invalid_parameter);
  CHECK_THROWS_AS(parse_sweep("alpha"), invalid_parameter);
}

TEST_CASE("config sanity gates") {
  ExperimentConfig cfg;
  cfg.samples = 100;
  CHECK_THROWS_AS(cfg.check(), invalid_parameter);
  cfg = ExperimentConfig{};
  cfg.format = "parquet";
  CHECK_THROWS_AS(cfg.check(), invalid_parameter);
}

TEST_CASE("csv round trip is exact") {
  FigureDataset d;
  d.figure_id = "fig2";
  d.columns = {"a", "b", "c"};
  d.provenance = {{"seed", "12345"}, {"note", "round trip"}};
  d.add_row({1.0 / 3.0, 1e-17, 12345.678901234567});
  d.add_row({-0.0, 2.2250738585072014e-308, 4.4668359215096305});

  const fs::path dir = fs::temp_directory_path() / "dudc_tests";
  fs::create_directories(dir);
  const std::string path = (dir / "roundtrip.csv").string();
  write_csv(path, d);
  const FigureDataset back = read_csv(path);
  CHECK(back.figure_id == "fig2");
  CHECK(back.columns == d.columns);
  CHECK(back.provenance == d.provenance);
  REQUIRE(back.rows.size() == d.rows.size());
  for (std::size_t r = 0; r < d.rows.size(); ++r)
    for (std::size_t c = 0; c < d.columns.size(); ++c) CHECK(back.rows[r][c] == d.rows[r][c]);

  FigureDataset bad;
  bad.figure_id = "fig2";
  bad.columns = {"a"};
  CHECK_THROWS_AS(bad.add_row({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(bad.add_row({std::nan("")}), std::invalid_argument);
}

TEST_CASE("fig2: analytic and model-origin MC columns agree within the printed CI") {
  ExperimentConfig cfg = fast_config();
  cfg.sweep = parse_sweep("lambda_s_ratio=1:10:4");
  const FigureDataset d = make_fig2(cfg);
  REQUIRE(d.rows.size() == 4);
  for (const auto& row : d.rows) {
    for (const auto& [ana, mc, hw] :
         {std::array<const char*, 3>{"dude", "mc_dude", "mc_dude_hw"},
          std::array<const char*, 3>{"dualconn", "mc_dualconn", "mc_dualconn_hw"},
          std::array<const char*, 3>{"scell", "mc_scell", "mc_scell_hw"}}) {
      const double a = row[column_index(d, ana)];
      const double m = row[column_index(d, mc)];
      const double h = row[column_index(d, hw)];
      CHECK(std::abs(a - m) <= h);
    }
  }
}

TEST_CASE("fig2: aggregates sum cases correctly and ppp columns carry the approximation gap") {
  ExperimentConfig cfg = fast_config();
  cfg.samples = 20000;
  cfg.sweep = parse_sweep("lambda_s_ratio=2:2:1");
  const FigureDataset d = make_fig2(cfg);
  const auto& row = d.rows.at(0);
  const double dude = row[column_index(d, "dude")];
  const double p3 = row[column_index(d, "p_case3")];
  const double p4 = row[column_index(d, "p_case4")];
  const double p5 = row[column_index(d, "p_case5")];
  CHECK_THAT(dude, Catch::Matchers::WithinAbs(p3 + p4 + p5, 1e-15));
  // at density ratio 2 the analytic ratio is ~1.98 while the true-PPP origin
  // sits near 1.4; both ends are pinned
  CHECK_THAT(dude / row[column_index(d, "dualconn")], Catch::Matchers::WithinAbs(1.9796, 0.02));
  const double ppp_ratio =
      row[column_index(d, "ppp_dude")] / row[column_index(d, "ppp_dualconn")];
  CHECK(ppp_ratio > 1.3);
  CHECK(ppp_ratio < 1.5);
}

TEST_CASE("fig2: near-equal transmit powers drain the decoupled aggregate") {
  // exactly equal powers are rejected at validation; approaching the limit
  // sends every decoupled probability to zero
  ExperimentConfig cfg = fast_config();
  cfg.params.p_s_dbm = cfg.params.p_m_dbm - 1e-9;
  cfg.sweep = parse_sweep("lambda_s_ratio=2:5:2");
  const FigureDataset d = make_fig2(cfg);
  for (const auto& row : d.rows) CHECK(row[column_index(d, "dude")] < 1e-9);
  cfg.params.p_s_dbm = cfg.params.p_m_dbm;
  CHECK_THROWS_AS(Model(cfg.params), invalid_parameter);
}

TEST_CASE("fig3 columns") {
  ExperimentConfig cfg = fast_config();
  cfg.sweep = parse_sweep("lambda_s_ratio=1:10:3");
  const FigureDataset d = make_fig3(cfg);
  REQUIRE(d.rows.size() == 3);
  for (const auto& row : d.rows) {
    const double q = row[column_index(d, "dude_singleconn")];
    CHECK(q >= 0.0);
    CHECK_THAT(row[column_index(d, "coupled_singleconn")],
               Catch::Matchers::WithinAbs(1.0 - q, 1e-15));
    // dual connectivity multiplies decoupling opportunities
    CHECK(row[column_index(d, "dude_dualconn")] > q);
  }
}

TEST_CASE("fig4: emitted densities integrate to one and match their histograms") {
  ExperimentConfig cfg = fast_config();
  const FigureDataset d = make_fig4(cfg);
  const auto ci = [&](const char* n) { return column_index(d, n); };

  std::map<std::pair<int, int>, std::vector<std::size_t>> by_pair;
  for (std::size_t r = 0; r < d.rows.size(); ++r)
    by_pair[{static_cast<int>(d.rows[r][ci("case_id")]),
             static_cast<int>(d.rows[r][ci("role")])}]
        .push_back(r);
  REQUIRE(by_pair.size() == 8);

  double gap_case4 = 0.0, gap_case5 = 0.0, mean_m4 = 0.0, mean_s4 = 0.0;
  for (const auto& [key, rows] : by_pair) {
    // midpoint-rule mass of the emitted pdf grid
    double mass = 0.0;
    const double dx = d.rows[rows[1]][ci("x_m")] - d.rows[rows[0]][ci("x_m")];
    for (const auto r : rows) mass += d.rows[r][ci("pdf")] * dx;
    CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-3));
    CHECK(d.rows[rows[0]][ci("pair_ks")] < ks_critical_one_sample(cfg.samples));

    const double mean_q = d.rows[rows[0]][ci("pair_mean_quad")];
    const double mean_mc = d.rows[rows[0]][ci("pair_mean_mc")];
    CHECK_THAT(mean_mc, Catch::Matchers::WithinRel(mean_q, 0.02));
    if (key == std::pair<int, int>{4, 0}) mean_m4 = mean_q;
    if (key == std::pair<int, int>{4, 1}) mean_s4 = mean_q;
    if (key == std::pair<int, int>{5, 0}) gap_case5 = mean_q;
    if (key == std::pair<int, int>{5, 1}) gap_case5 -= mean_q;
  }
  gap_case4 = mean_m4 - mean_s4;
  // reproduction target: case-4 serving-distance gap near 40 m
  CHECK(gap_case4 > 30.0);
  CHECK(gap_case4 < 50.0);
  // case 5's gap is reported but sits well under 40 m; keep it pinned as a finding
  CHECK_THAT(gap_case5, Catch::Matchers::WithinAbs(18.5, 2.0));
}

TEST_CASE("fig6/fig7 structure and quadrature-vs-MC consistency") {
  ExperimentConfig cfg = fast_config();
  cfg.samples = 20000;
  const FigureDataset f6 = make_fig6(cfg);
  REQUIRE(f6.rows.size() == 2);
  for (const auto& row : f6.rows) {
    CHECK(std::abs(row[column_index(f6, "mc_se_dude_agg")] -
                   row[column_index(f6, "se_dude_agg")]) <=
          std::max(0.02 * row[column_index(f6, "se_dude_agg")],
                   2.0 * row[column_index(f6, "mc_se_dude_agg_hw")]));
    CHECK_THAT(row[column_index(f6, "gain_diff")],
               Catch::Matchers::WithinAbs(row[column_index(f6, "se_dude_agg")] -
                                              row[column_index(f6, "se_bl1_agg")],
                                          1e-12));
  }

  const FigureDataset f7 = make_fig7(cfg);
  REQUIRE(f7.rows.size() == 3);
  for (const auto& row : f7.rows) {
    // dual connectivity beats its own single-connectivity link
    CHECK(row[column_index(f7, "se_dude_agg")] > row[column_index(f7, "se_bl2")]);
  }
  // carrier aggregation to the MCell loses to decoupling in case 4
  CHECK(f7.rows[1][column_index(f7, "se_bl3_agg")] < f7.rows[1][column_index(f7, "se_dude_agg")]);
}

TEST_CASE("fig5b gain columns") {
  ExperimentConfig cfg = fast_config();
  cfg.sweep = parse_sweep("p_s_dbm=27:33:3");
  const FigureDataset d = make_fig5b(cfg);
  REQUIRE(d.rows.size() == 3);
  double prev_gain = 1e9;
  for (const auto& row : d.rows) {
    // case 5's coupled counterpart uses the same two cells: zero structural gain
    CHECK_THAT(row[column_index(d, "case5_gain_diff")], Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(row[column_index(d, "case5_gain_ratio")], Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK(row[column_index(d, "case5_decoupled_link_gain")] > 0.0);
    // lower SCell power widens the decoupled-link advantage
    const double g = row[column_index(d, "case4_decoupled_link_gain")];
    CHECK(g < prev_gain);
    prev_gain = g;
  }
}

TEST_CASE("validation suite passes on the default configuration") {
  ExperimentConfig cfg = fast_config();
  const ValidationReport rep = run_validation(cfg);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name, c.value, c.tolerance);
    if (c.gated) CHECK(c.pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("cli: exit-code contract") {
  const fs::path out = fs::temp_directory_path() / "dudc_tests" / "cli_out";
  fs::remove_all(out);

  // 0: success
  CHECK(run_cli({"probabilities", "--samples", "10000", "--sweep", "lambda_s_ratio=2:5:2", "--out",
                 out.string()}) == 0);
  CHECK(fs::exists(out / "fig2.csv"));
  CHECK(fs::exists(out / "fig3.csv"));

  // 2: configuration errors, with the field named on stderr
  CHECK(run_cli({"probabilities", "--samples", "100"}) == 2);
  const std::string bad = write_temp("neg.cfg", "lambda_s = -1\n");
  CHECK(run_cli({"validate", "--config", bad}) == 2);
  CHECK(run_cli({"bogus-subcommand"}) == 2);
  CHECK(run_cli({"validate", "--sweep", "nope=1:2:3"}) == 2);

  // 1: a failed check (simplex gate tightened beyond floating point)
  const std::string tight = write_temp("tight.cfg", "samples = 10000\nsimplex_tolerance = 0\n");
  CHECK(run_cli({"validate", "--config", tight}) == 1);

  // 0: the full validation suite at default tolerances
  const std::string ok = write_temp("val.cfg", "samples = 10000\n");
  CHECK(run_cli({"validate", "--config", ok}) == 0);
}

TEST_CASE("reruns with identical provenance reproduce datasets bit-identically") {
  ExperimentConfig cfg = fast_config();
  cfg.sweep = parse_sweep("lambda_s_ratio=2:8:3");
  const FigureDataset a = make_fig2(cfg);
  const FigureDataset b = make_fig2(cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.columns.size(); ++c) CHECK(a.rows[r][c] == b.rows[r][c]);

  // whole files, byte for byte, through the CLI
  const fs::path o1 = fs::temp_directory_path() / "dudc_tests" / "repro1";
  const fs::path o2 = fs::temp_directory_path() / "dudc_tests" / "repro2";
  fs::remove_all(o1);
  fs::remove_all(o2);
  const std::vector<std::string> common = {"probabilities", "--samples", "10000",
                                           "--sweep", "lambda_s_ratio=3:7:2", "--seed", "777"};
  auto run_into = [&](const fs::path& dir) {
    auto args = common;
    args.push_back("--out");
    args.push_back(dir.string());
    REQUIRE(run_cli(args) == 0);
  };
  run_into(o1);
  run_into(o2);
  for (const char* f : {"fig2.csv", "fig3.csv"}) {
    std::ifstream f1(o1 / f), f2(o2 / f);
    const std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    const std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK_FALSE(s1.empty());
  }
}

TEST_CASE("cli: distances and capacity commands emit their datasets") {
  const fs::path out = fs::temp_directory_path() / "dudc_tests" / "cli_out2";
  fs::remove_all(out);
  CHECK(run_cli({"distances", "--samples", "10000", "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "fig4.csv"));
  CHECK(run_cli({"capacity", "--samples", "10000", "--sweep", "lambda_s_ratio=4:6:2", "--out",
                 out.string()}) == 0);
  for (const char* f : {"fig5a.csv", "fig5b.csv", "fig6.csv", "fig7.csv"})
    CHECK(fs::exists(out / f));

  // emitted files parse back with matching shapes
  const FigureDataset d5a = read_csv((out / "fig5a.csv").string());
  CHECK(d5a.figure_id == "fig5a");
  CHECK(d5a.rows.size() == 2);
  CHECK(d5a.columns.size() == 31);
}
