// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dudc {

/// Two-sided 99% normal quantile used for every reported confidence interval.
inline constexpr double z99 = 2.5758293035489004;

/// Kolmogorov-Smirnov asymptotic critical constant at significance 0.01:
/// reject when D > ks_c01 / sqrt(n) (one-sample) or with the combined factor
/// (two-sample).
inline constexpr double ks_c01 = 1.6276236115189502;

inline double binomial_halfwidth99(double p_hat, std::uint64_t n) {
  if (n == 0) throw std::domain_error("binomial_halfwidth99: empty sample");
  const double p = std::clamp(p_hat, 0.0, 1.0);
  // never report a zero half-width; the 1/n floor covers empirical p of 0 or 1
  const double var = std::max(p * (1.0 - p), 1.0 / static_cast<double>(n));
  return z99 * std::sqrt(var / static_cast<double>(n));
}

/// One-sample KS statistic of `sorted` against the CDF functor.
template <class Cdf>
double ks_statistic_sorted(const std::vector<double>& sorted, Cdf&& cdf) {
  if (sorted.empty()) throw std::domain_error("ks_statistic_sorted: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double ks_critical_one_sample(std::uint64_t n, double c = ks_c01) {
  return c / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(std::uint64_t n, std::uint64_t m, double c = ks_c01) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

/// Two-sample KS statistic; both inputs must be sorted.
inline double ks_statistic_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_statistic_two_sample: empty sample");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

/// Streaming mean/variance accumulator (plain sums; deterministic).
class Accumulator {
 public:
  void add(double x) {
    ++n_;
    sum_ += x;
    sumsq_ += x * x;
  }
  std::uint64_t n() const noexcept { return n_; }
  double mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }
  double variance() const {
    if (n_ < 2) return 0.0;
    const double m = mean();
    return std::max(0.0, sumsq_ / static_cast<double>(n_) - m * m);
  }
  double stddev() const { return std::sqrt(variance()); }
  /// Delta-method 99% half-width of the mean.
  double halfwidth99() const {
    if (n_ < 2) return 0.0;
    return z99 * stddev() / std::sqrt(static_cast<double>(n_));
  }

 private:
  std::uint64_t n_ = 0;
  double sum_ = 0.0;
  double sumsq_ = 0.0;
};

/// Fixed-bin histogram on [lo, hi); out-of-range samples are counted but not
/// binned.
struct Histogram {
  double lo = 0.0, hi = 1.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t out_of_range = 0;

  Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0) {
    if (!(hi_ > lo_) || bins == 0) throw std::domain_error("Histogram: bad layout");
  }

  void add(double x) {
    ++total;
    if (x < lo || x >= hi) {
      ++out_of_range;
      return;
    }
    const auto idx = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(counts.size()));
    ++counts[std::min(idx, counts.size() - 1)];
  }

  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
  /// Empirical density of bin i, normalized over all samples.
  double density(std::size_t i) const {
    if (total == 0) return 0.0;
    return static_cast<double>(counts[i]) / (static_cast<double>(total) * bin_width());
  }
};

}  // namespace dudc
