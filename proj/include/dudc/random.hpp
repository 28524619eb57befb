// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace dudc {

/// Identifies one reproducible random sequence. The same (seed, stream_id)
/// always reproduces the same draws; distinct stream_ids give statistically
/// independent streams, so estimators can be sharded without coordination.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic random stream: mt19937_64 whose state is derived from
/// (seed, stream_id) through a splitmix64 chain. All samplers are
/// inverse-transform or explicit algorithms, never the implementation-defined
/// std::*_distribution adapters, so sequences are identical across standard
/// libraries.
class Stream {
 public:
  explicit Stream(RandomStream rs) : Stream(rs.seed, rs.stream_id) {}

  Stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t st = seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
    std::seed_seq seq{detail::splitmix64(st), detail::splitmix64(st), detail::splitmix64(st),
                      detail::splitmix64(st)};
    eng_.seed(seq);
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform draw strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(eng_() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform draw on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unit-mean exponential.
  double exponential() { return -std::log(uniform01()); }

  /// Poisson draw. Product-of-uniforms for small means, Hormann's PTRS
  /// transformed rejection for large ones; both fully deterministic.
  std::uint64_t poisson(double mean) {
    if (!(mean >= 0.0)) throw std::domain_error("poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      std::uint64_t k = 0;
      double prod = uniform01();
      while (prod > limit) {
        ++k;
        prod *= uniform01();
      }
      return k;
    }
    return poisson_ptrs(mean);
  }

 private:
  std::uint64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
      const double u = uniform01() - 0.5;
      const double v = uniform01();
      const double us = 0.5 - std::abs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
          k * loglam - mean - std::lgamma(k + 1.0))
        return static_cast<std::uint64_t>(k);
    }
  }

  std::mt19937_64 eng_;
};

}  // namespace dudc
