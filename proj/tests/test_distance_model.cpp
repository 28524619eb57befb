// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "dudc/distance_model.hpp"
#include "dudc/figures.hpp"
#include "dudc/quadrature.hpp"
#include "dudc/stats.hpp"

using namespace dudc;

namespace {

Model reference_model() { return Model(NetworkParams{}); }

}  // namespace

TEST_CASE("rayleigh law basics") {
  const RayleighDist d{1.0 / M_PI};
  CHECK(d.cdf(0.0) == 0.0);
  CHECK_THAT(d.cdf(1.0), Catch::Matchers::WithinRel(1.0 - std::exp(-1.0), 1e-12));
  const RayleighDist metres{1.47e-5};  // keeps cdf(100) well away from 1
  for (const double x : {0.1, 1.0, 100.0})
    CHECK_THAT(metres.quantile(metres.cdf(x)), Catch::Matchers::WithinRel(x, 1e-10));
  CHECK_THROWS_AS(d.pdf(-1.0), std::domain_error);
  CHECK_THROWS_AS(d.cdf(-0.5), std::domain_error);
  CHECK_THROWS_AS(d.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);

  const auto mass = integrate([&](double x) { return d.pdf(x); }, 0.0, 20.0, 1e-12);
  CHECK_THAT(mass.value, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("rayleigh sampling: determinism and mean") {
  const RayleighDist d{1.47e-5};
  Stream a(42, 7), b(42, 7), c(42, 8);
  CHECK(d.sample(a) == d.sample(b));
  CHECK(d.sample(a) == d.sample(b));
  CHECK(d.sample(a) != d.sample(c));

  Stream rng(11, 0);
  Accumulator acc;
  const int n = 100000;
  for (int i = 0; i < n; ++i) acc.add(d.sample(rng));
  // mean of the nearest-point law is 1/(2 sqrt(lambda)); sd = sqrt(4/pi - 1) * mean
  const double mean = d.mean();
  const double sigma = mean * std::sqrt(4.0 / M_PI - 1.0) / std::sqrt(double(n));
  CHECK(std::abs(acc.mean() - mean) < 3.0 * sigma);
}

TEST_CASE("defined conditional pairs normalize to one") {
  const Model m = reference_model();
  for (const auto& [c, role] : conditional_pairs()) {
    const ConditionalDistanceDist d(c, role, m);
    CAPTURE(c, static_cast<int>(role));
    // signed mixture weights must sum to exactly the closed-form probability share
    CHECK_THAT(d.mixture().weight_sum(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    const auto mass = integrate([&](double x) { return d.pdf(x); }, 0.0,
                                d.mixture().support_cutoff(), 1e-10);
    CHECK_THAT(mass.value, Catch::Matchers::WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("undefined pairs are rejected") {
  const Model m = reference_model();
  CHECK_THROWS_AS(ConditionalDistanceDist(5, Cell::scell2, m), std::domain_error);
  CHECK_THROWS_AS(ConditionalDistanceDist(1, Cell::scell1, m), std::domain_error);
  CHECK_THROWS_AS(ConditionalDistanceDist(2, Cell::mcell, m), std::domain_error);
  CHECK_THROWS_AS(ConditionalSampler(5, Cell::scell2, m), std::domain_error);
}

TEST_CASE("conditional pdf boundary and sign") {
  const Model m = reference_model();
  const ConditionalDistanceDist d(3, Cell::mcell, m);
  CHECK(d.pdf(0.0) == 0.0);
  for (double x = 1.0; x < 400.0; x += 7.0) CHECK(d.pdf(x) >= 0.0);
  CHECK_THROWS_AS(d.pdf(-1.0), std::domain_error);
}

TEST_CASE("conditional cdf: quadrature route against the closed form") {
  const Model m = reference_model();
  for (const auto& [c, role] : conditional_pairs()) {
    const ConditionalDistanceDist d(c, role, m);
    CHECK(d.cdf(0.0) == 0.0);
    const double far = 10.0 * RayleighDist{m.lambda_m()}.quantile(0.99999);
    CHECK_THAT(d.cdf(far), Catch::Matchers::WithinAbs(1.0, 1e-6));
    for (const double q : {30.0, 80.0, 150.0}) {
      CHECK_THAT(d.cdf(q), Catch::Matchers::WithinAbs(d.closed_cdf(q), 1e-8));
    }
    // monotone
    double prev = 0.0;
    for (double x = 10.0; x <= 300.0; x += 30.0) {
      const double v = d.cdf(x);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("cdf derivative recovers the pdf") {
  const Model m = reference_model();
  const ConditionalDistanceDist d(4, Cell::scell1, m);
  for (const double x : {30.0, 60.0, 90.0}) {
    const double h = 0.05;
    const double deriv = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
    CHECK_THAT(deriv, Catch::Matchers::WithinRel(d.pdf(x), 1e-4));
  }
}

TEST_CASE("serving SCell is stochastically closer than the MCell in every decoupled case") {
  const Model m = reference_model();
  for (int c : {3, 4, 5}) {
    const double mean_s = ConditionalDistanceDist(c, Cell::scell1, m).mean();
    const double mean_m = ConditionalDistanceDist(c, Cell::mcell, m).mean();
    CHECK(mean_s < mean_m);
  }
}

TEST_CASE("closed-form mean agrees with the quadrature oracle") {
  const Model m = reference_model();
  for (const auto& [c, role] : conditional_pairs()) {
    const ConditionalDistanceDist d(c, role, m);
    const auto quad = integrate([&](double x) { return x * d.pdf(x); }, 0.0,
                                d.mixture().support_cutoff(), 1e-11);
    CHECK_THAT(d.mean(), Catch::Matchers::WithinRel(quad.value, 1e-8));
  }
}

TEST_CASE("rejection sampler: acceptance, mean, and law") {
  const Model m = reference_model();
  const int accepted_target = 20000;

  for (const auto& [c, role] : conditional_pairs()) {
    CAPTURE(c, static_cast<int>(role));
    ConditionalSampler sampler(c, role, m);
    Stream rng(909, static_cast<std::uint64_t>(c * 10 + static_cast<int>(role)));
    std::vector<double> xs;
    xs.reserve(accepted_target);
    Accumulator acc;
    for (int i = 0; i < accepted_target; ++i) {
      const double x = sampler.draw(rng);
      xs.push_back(x);
      acc.add(x);
    }

    const ConditionalDistanceDist d(c, role, m);
    const double p = d.case_prob();
    const double sigma_rate = std::sqrt(p * (1.0 - p) / double(sampler.trials()));
    CHECK(std::abs(sampler.acceptance_rate() - p) < 3.0 * sigma_rate);

    const double mean_q = d.mean();
    CHECK(std::abs(acc.mean() - mean_q) < 3.0 * acc.stddev() / std::sqrt(double(xs.size())));

    // two-sample KS against inverse-CDF draws from the closed-form law
    std::vector<double> inv;
    inv.reserve(accepted_target);
    Stream rng2(910, static_cast<std::uint64_t>(c * 10 + static_cast<int>(role)));
    for (int i = 0; i < accepted_target; ++i) {
      const double u = rng2.uniform01();
      double lo = 0.0, hi = d.mixture().support_cutoff();
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (d.closed_cdf(mid) < u ? lo : hi) = mid;
      }
      inv.push_back(lo);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(inv.begin(), inv.end());
    const double ks = ks_statistic_two_sample(xs, inv);
    CHECK(ks < ks_critical_two_sample(xs.size(), inv.size()));
  }
}

TEST_CASE("case-4 first-SCell law at full sample size: KS below 0.01") {
  const Model m = reference_model();
  const ConditionalDistanceDist d(4, Cell::scell1, m);
  ConditionalSampler sampler(4, Cell::scell1, m);
  Stream rng(606, 41);
  std::vector<double> xs;
  xs.reserve(100000);
  for (int i = 0; i < 100000; ++i) xs.push_back(sampler.draw(rng));
  std::sort(xs.begin(), xs.end());
  const double ks = ks_statistic_sorted(xs, [&](double x) { return d.closed_cdf(x); });
  CHECK(ks < 0.01);
}

TEST_CASE("sample_conditional draws from the requested pair") {
  const Model m = reference_model();
  const ConditionalDistanceDist d(5, Cell::scell1, m);
  Stream rng(31, 1);
  const double x = sample_conditional(d, m, rng);
  CHECK(x > 0.0);
}
