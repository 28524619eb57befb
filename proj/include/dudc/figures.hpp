// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dudc/capacity.hpp"
#include "dudc/csv.hpp"
#include "dudc/experiment.hpp"
#include "dudc/monte_carlo.hpp"
#include "dudc/quadrature.hpp"
#include "dudc/stats.hpp"

namespace dudc {

/// The eight defined (case, role) conditional-distance pairs, in fixed order.
inline const std::array<std::pair<int, Cell>, 8>& conditional_pairs() {
  static const std::array<std::pair<int, Cell>, 8> pairs = {{{3, Cell::scell1},
                                                             {3, Cell::scell2},
                                                             {3, Cell::mcell},
                                                             {4, Cell::scell1},
                                                             {4, Cell::scell2},
                                                             {4, Cell::mcell},
                                                             {5, Cell::scell1},
                                                             {5, Cell::mcell}}};
  return pairs;
}

namespace detail {

// Fixed stream-id bases per figure/purpose; sweep index and pair index are
// added so results do not depend on evaluation order.
inline constexpr std::uint64_t kStreamFig2Model = 1000;
inline constexpr std::uint64_t kStreamFig2Ppp = 1500;
inline constexpr std::uint64_t kStreamFig4 = 2000;
inline constexpr std::uint64_t kStreamFig5a = 3000;
inline constexpr std::uint64_t kStreamFig6 = 4000;
inline constexpr std::uint64_t kStreamFig7 = 5000;

inline Model model_with(const ExperimentConfig& cfg, const std::string& knob, double value) {
  NetworkParams p = cfg.params;
  if (knob == "lambda_s_ratio")
    p.lambda_s = value * p.lambda_m;
  else if (knob == "p_s_dbm")
    p.p_s_dbm = value;
  else if (knob == "alpha")
    p.alpha = value;
  else if (!knob.empty())
    throw invalid_parameter("sweep", "unsupported sweep parameter " + knob);
  return Model(p);
}

inline SweepSpec sweep_or(const ExperimentConfig& cfg, const std::string& name, double start,
                          double stop, int steps) {
  if (cfg.sweep.active() && cfg.sweep.name == name) return cfg.sweep;
  return SweepSpec{name, start, stop, steps};
}

}  // namespace detail

/// Association probabilities against the SCell density ratio: closed forms,
/// model-origin Monte Carlo, and true-PPP Monte Carlo, each with 99% CIs.
/// The model-origin columns validate the closed forms; the ppp columns show
/// the two-Rayleigh approximation gap.
inline FigureDataset make_fig2(const ExperimentConfig& cfg) {
  cfg.check();
  FigureDataset d;
  d.figure_id = "fig2";
  d.provenance = provenance(cfg);
  d.columns = {"lambda_s_ratio", "p_case1",      "p_case2",        "p_case3",        "p_case4",
               "p_case5",        "p_case6",      "dude",           "dualconn",       "scell",
               "mc_dude",        "mc_dude_hw",   "mc_dualconn",    "mc_dualconn_hw", "mc_scell",
               "mc_scell_hw",    "ppp_dude",     "ppp_dude_hw",    "ppp_dualconn",   "ppp_dualconn_hw",
               "ppp_scell",      "ppp_scell_hw", "ppp_resamples"};
  const SweepSpec sweep = detail::sweep_or(cfg, "lambda_s_ratio", 1.0, 10.0, 10);
  d.provenance.emplace_back("effective_sweep", sweep.name + "=" + detail::format_g17(sweep.start) +
                                                   ":" + detail::format_g17(sweep.stop) + ":" +
                                                   std::to_string(sweep.steps));
  const auto values = sweep.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Model m = detail::model_with(cfg, "lambda_s_ratio", values[i]);
    const CaseProbabilities cp = all_case_probabilities(m);
    Stream s_model(cfg.seed, detail::kStreamFig2Model + i);
    Stream s_ppp(cfg.seed, detail::kStreamFig2Ppp + i);
    const EmpiricalStats mc = estimate_subcase_frequencies(m, cfg.samples, TripleOrigin::model, s_model);
    const EmpiricalStats pp = estimate_subcase_frequencies(m, cfg.samples, TripleOrigin::ppp, s_ppp);
    const auto agg_hw = [&](double p_agg, std::uint64_t n) { return binomial_halfwidth99(p_agg, n); };
    d.add_row({values[i], cp.p[0], cp.p[1], cp.p[2], cp.p[3], cp.p[4], cp.p[5], cp.dude(),
               cp.dualconn(), cp.scell(), mc.dude(), agg_hw(mc.dude(), mc.sample_size),
               mc.dualconn(), agg_hw(mc.dualconn(), mc.sample_size), mc.scell(),
               agg_hw(mc.scell(), mc.sample_size), pp.dude(), agg_hw(pp.dude(), pp.sample_size),
               pp.dualconn(), agg_hw(pp.dualconn(), pp.sample_size), pp.scell(),
               agg_hw(pp.scell(), pp.sample_size), static_cast<double>(pp.ppp_resamples)});
  }
  return d;
}

/// Dual-connectivity association aggregates against the single-connectivity
/// (two-cell) decoupling probability.
inline FigureDataset make_fig3(const ExperimentConfig& cfg) {
  cfg.check();
  FigureDataset d;
  d.figure_id = "fig3";
  d.provenance = provenance(cfg);
  d.columns = {"lambda_s_ratio", "dude_dualconn", "coupled_dualconn", "scell_dualconn",
               "dude_singleconn", "coupled_singleconn"};
  const SweepSpec sweep = detail::sweep_or(cfg, "lambda_s_ratio", 1.0, 10.0, 10);
  d.provenance.emplace_back("effective_sweep", sweep.name + "=" + detail::format_g17(sweep.start) +
                                                   ":" + detail::format_g17(sweep.stop) + ":" +
                                                   std::to_string(sweep.steps));
  for (const double r : sweep.values()) {
    const Model m = detail::model_with(cfg, "lambda_s_ratio", r);
    const CaseProbabilities cp = all_case_probabilities(m);
    const double q = two_cell_decoupling_probability(m.lambda_m(), m.lambda_s(), m.eta());
    d.add_row({r, cp.dude(), cp.dualconn(), cp.scell(), q, 1.0 - q});
  }
  return d;
}

/// Conditional distance densities for the eight (case, role) pairs, with
/// Monte Carlo histograms from the rejection sampler, per-pair means (both
/// routes) and the histogram-vs-density KS statistic.
inline FigureDataset make_fig4(const ExperimentConfig& cfg, int bins = 150) {
  cfg.check();
  const Model m(cfg.params);
  FigureDataset d;
  d.figure_id = "fig4";
  d.provenance = provenance(cfg);
  d.columns = {"case_id", "role", "x_m", "pdf", "mc_density", "pair_mean_quad", "pair_mean_mc",
               "pair_ks"};
  const auto& pairs = conditional_pairs();
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto [case_id, role] = pairs[pi];
    const ConditionalDistanceDist dist(case_id, role, m);
    // grid upper edge at 99.95% mass so the emitted curve integrates to 1
    // within plot tolerance
    double lo = 0.0, hi = dist.mixture().support_cutoff();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dist.closed_cdf(mid) < 0.9995 ? lo : hi) = mid;
    }
    const double x_hi = hi;

    Stream rng(cfg.seed, detail::kStreamFig4 + pi);
    ConditionalSampler sampler(case_id, role, m);
    Histogram hist(0.0, x_hi, static_cast<std::size_t>(bins));
    Accumulator mc_mean;
    std::vector<double> samples;
    samples.reserve(cfg.samples);
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      const double x = sampler.draw(rng);
      hist.add(x);
      mc_mean.add(x);
      samples.push_back(x);
    }
    std::sort(samples.begin(), samples.end());
    const double ks = ks_statistic_sorted(samples, [&](double x) { return dist.closed_cdf(x); });
    const double mean_quad =
        integrate([&](double x) { return x * dist.pdf(x); }, 0.0, dist.mixture().support_cutoff(),
                  1e-10)
            .value;
    for (std::size_t b = 0; b < hist.counts.size(); ++b)
      d.add_row({static_cast<double>(case_id), static_cast<double>(static_cast<int>(role)),
                 hist.bin_center(b), dist.pdf(hist.bin_center(b)), hist.density(b), mean_quad,
                 mc_mean.mean(), ks});
  }
  return d;
}

/// Per-case spectral efficiency against the SCell density ratio: quadrature
/// link/aggregate values, the decoupled-vs-MCell comparison, mean-SIR gain,
/// and Monte Carlo cross-checks for the compared links.
inline FigureDataset make_fig5a(const ExperimentConfig& cfg) {
  cfg.check();
  FigureDataset d;
  d.figure_id = "fig5a";
  d.provenance = provenance(cfg);
  d.columns = {"lambda_s_ratio"};
  for (int c : {3, 4, 5}) {
    const std::string p = "case" + std::to_string(c) + "_";
    for (const char* col :
         {"se_link1", "se_link2", "se_aggregate", "se_decoupled", "se_mcell", "sir_gain_db",
          "mc_se_decoupled", "mc_se_decoupled_hw", "mc_se_mcell", "mc_se_mcell_hw"})
      d.columns.push_back(p + col);
  }
  const SweepSpec sweep = detail::sweep_or(cfg, "lambda_s_ratio", 1.0, 10.0, 10);
  d.provenance.emplace_back("effective_sweep", sweep.name + "=" + detail::format_g17(sweep.start) +
                                                   ":" + detail::format_g17(sweep.stop) + ":" +
                                                   std::to_string(sweep.steps));
  const auto values = sweep.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Model m = detail::model_with(cfg, "lambda_s_ratio", values[i]);
    std::vector<double> row{values[i]};
    int pair_idx = 0;
    for (int c : {3, 4, 5}) {
      const CapacityResult agg = dude_case_capacity(c, m);
      const double se_mcell =
          link_capacity(detail::conditional_link(c, Cell::mcell, m)).spectral_efficiency;
      const Cell dec = decoupled_role(c);
      const double se_dec = (dec == Cell::scell1) ? agg.per_link[0] : agg.per_link[1];
      const double gain = sir_gain_db(c, m);
      Stream s_dec(cfg.seed, detail::kStreamFig5a + 16 * i + pair_idx++);
      Stream s_m(cfg.seed, detail::kStreamFig5a + 16 * i + pair_idx++);
      const SirCapacityStats mc_dec = empirical_sir_capacity(c, dec, m, cfg.samples, s_dec);
      const SirCapacityStats mc_m = empirical_sir_capacity(c, Cell::mcell, m, cfg.samples, s_m);
      row.insert(row.end(),
                 {agg.per_link[0], agg.per_link[1], agg.spectral_efficiency, se_dec, se_mcell, gain,
                  mc_dec.mean_spectral_efficiency, mc_dec.se_halfwidth99,
                  mc_m.mean_spectral_efficiency, mc_m.se_halfwidth99});
    }
    d.add_row(std::move(row));
  }
  return d;
}

/// Aggregate spectral-efficiency gain of the decoupled association over the
/// downlink-ranked coupled counterpart, against the SCell transmit power.
/// Both the difference and the ratio are emitted; for case 5 the counterpart
/// uses the same two cells with inverted links, making the aggregate gain
/// structurally zero, so the per-link decoupled gain is reported alongside.
inline FigureDataset make_fig5b(const ExperimentConfig& cfg) {
  cfg.check();
  FigureDataset d;
  d.figure_id = "fig5b";
  d.provenance = provenance(cfg);
  d.columns = {"p_s_dbm"};
  for (int c : {3, 4, 5}) {
    const std::string p = "case" + std::to_string(c) + "_";
    for (const char* col :
         {"se_dude_agg", "se_drp_agg", "gain_diff", "gain_ratio", "decoupled_link_gain"})
      d.columns.push_back(p + col);
  }
  const SweepSpec sweep = detail::sweep_or(cfg, "p_s_dbm", 24.0, 36.0, 5);
  d.provenance.emplace_back("effective_sweep", sweep.name + "=" + detail::format_g17(sweep.start) +
                                                   ":" + detail::format_g17(sweep.stop) + ":" +
                                                   std::to_string(sweep.steps));
  for (const double ps : sweep.values()) {
    const Model m = detail::model_with(cfg, "p_s_dbm", ps);
    std::vector<double> row{ps};
    for (int c : {3, 4, 5}) {
      const CapacityResult dude = dude_case_capacity(c, m);
      // downlink-ranked coupled links on the same region: case 3 -> (S1, M);
      // cases 4, 5 -> (M, S1)
      const CapacityResult drp = detail::aggregate_links(
          {detail::conditional_link(c, (c == 3) ? Cell::scell1 : Cell::mcell, m),
           detail::conditional_link(c, (c == 3) ? Cell::mcell : Cell::scell1, m)},
          InterferenceGeometry::full_plane);
      const double se_mcell =
          link_capacity(detail::conditional_link(c, Cell::mcell, m)).spectral_efficiency;
      const Cell dec = decoupled_role(c);
      const double se_dec = (dec == Cell::scell1) ? dude.per_link[0] : dude.per_link[1];
      row.insert(row.end(), {dude.spectral_efficiency, drp.spectral_efficiency,
                             dude.spectral_efficiency - drp.spectral_efficiency,
                             dude.spectral_efficiency / drp.spectral_efficiency,
                             se_dec - se_mcell});
    }
    d.add_row(std::move(row));
  }
  return d;
}

/// Decoupled dual connectivity against the coupled dual-connectivity baseline
/// (bl1), cases 3 and 4, with Monte Carlo cross-checks of both aggregates.
inline FigureDataset make_fig6(const ExperimentConfig& cfg) {
  cfg.check();
  const Model m(cfg.params);
  FigureDataset d;
  d.figure_id = "fig6";
  d.provenance = provenance(cfg);
  d.columns = {"case_id",        "se_dude_agg",       "se_bl1_agg",    "gain_diff",
               "mc_se_dude_agg", "mc_se_dude_agg_hw", "mc_se_bl1_agg", "mc_se_bl1_agg_hw"};
  std::uint64_t sid = detail::kStreamFig6;
  for (int c : {3, 4}) {
    const CapacityResult dude = dude_case_capacity(c, m);
    const CapacityResult bl1 = baseline_capacity(Baseline::bl1, c, m);
    const auto mc_pair = [&](Cell a, Cell b) {
      Stream sa(cfg.seed, sid++), sb(cfg.seed, sid++);
      const SirCapacityStats ra = empirical_sir_capacity(c, a, m, cfg.samples, sa);
      const SirCapacityStats rb = empirical_sir_capacity(c, b, m, cfg.samples, sb);
      return std::pair<double, double>{
          ra.mean_spectral_efficiency + rb.mean_spectral_efficiency,
          std::hypot(ra.se_halfwidth99, rb.se_halfwidth99)};
    };
    const auto [mc_dude, mc_dude_hw] = mc_pair(Cell::scell1, (c == 5) ? Cell::mcell : Cell::scell2);
    const auto [mc_bl1, mc_bl1_hw] = mc_pair(Cell::scell1, Cell::mcell);
    d.add_row({static_cast<double>(c), dude.spectral_efficiency, bl1.spectral_efficiency,
               dude.spectral_efficiency - bl1.spectral_efficiency, mc_dude, mc_dude_hw, mc_bl1,
               mc_bl1_hw});
  }
  return d;
}

/// Decoupled dual connectivity against single connectivity (bl2) and
/// downlink-ranked carrier aggregation (bl3), cases 3-5.
inline FigureDataset make_fig7(const ExperimentConfig& cfg) {
  cfg.check();
  const Model m(cfg.params);
  FigureDataset d;
  d.figure_id = "fig7";
  d.provenance = provenance(cfg);
  d.columns = {"case_id", "se_dude_agg", "se_bl2", "se_bl3_agg", "mc_se_dude_agg",
               "mc_se_dude_agg_hw"};
  std::uint64_t sid = detail::kStreamFig7;
  for (int c : {3, 4, 5}) {
    const CapacityResult dude = dude_case_capacity(c, m);
    const CapacityResult bl2 = baseline_capacity(Baseline::bl2, c, m);
    const CapacityResult bl3 = baseline_capacity(Baseline::bl3, c, m);
    Stream sa(cfg.seed, sid++), sb(cfg.seed, sid++);
    const SirCapacityStats ra = empirical_sir_capacity(c, Cell::scell1, m, cfg.samples, sa);
    const SirCapacityStats rb =
        empirical_sir_capacity(c, (c == 5) ? Cell::mcell : Cell::scell2, m, cfg.samples, sb);
    d.add_row({static_cast<double>(c), dude.spectral_efficiency, bl2.spectral_efficiency,
               bl3.spectral_efficiency,
               ra.mean_spectral_efficiency + rb.mean_spectral_efficiency,
               std::hypot(ra.se_halfwidth99, rb.se_halfwidth99)});
  }
  return d;
}

}  // namespace dudc
