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
#include <string>
#include <vector>

#include "dudc/association.hpp"
#include "dudc/params.hpp"
#include "dudc/quadrature.hpp"
#include "dudc/random.hpp"

namespace dudc {

/// Nearest-point distance law of a PPP with the given intensity:
/// f(x) = 2 pi lambda x exp(-pi lambda x^2).
struct RayleighDist {
  double intensity;  ///< [1/m^2]

  double pdf(double x) const {
    check_x(x);
    return 2.0 * M_PI * intensity * x * std::exp(-M_PI * intensity * x * x);
  }

  double cdf(double x) const {
    check_x(x);
    return -std::expm1(-M_PI * intensity * x * x);
  }

  double quantile(double u) const {
    if (!(u > 0.0) || !(u < 1.0)) throw std::domain_error("rayleigh quantile: u must be in (0,1)");
    return std::sqrt(-std::log1p(-u) / (M_PI * intensity));
  }

  double mean() const { return 1.0 / (2.0 * std::sqrt(intensity)); }

  double sample(Stream& rng) const { return quantile(rng.uniform01()); }

 private:
  static void check_x(double x) {
    if (!(x >= 0.0)) throw std::domain_error("rayleigh: x must be nonnegative");
  }
};

/// Signed mixture of Rayleigh laws: pdf(x) = sum_k w_k 2 pi g_k x e^{-pi g_k x^2},
/// with weights summing to 1. Every conditional distance density of the model
/// reduces to this form, which keeps its CDF, mean, and the interference
/// Laplace factor in closed form.
struct RayleighMixture {
  struct Component {
    double weight;
    double rate;  // g_k [1/m^2]
  };
  std::vector<Component> components;

  double pdf(double x) const {
    double v = 0.0;
    for (const auto& c : components)
      v += c.weight * 2.0 * M_PI * c.rate * x * std::exp(-M_PI * c.rate * x * x);
    return std::max(v, 0.0);
  }

  double closed_cdf(double x) const {
    double v = 0.0;
    for (const auto& c : components) v += c.weight * -std::expm1(-M_PI * c.rate * x * x);
    return v;
  }

  double mean() const {
    double v = 0.0;
    for (const auto& c : components) v += c.weight / (2.0 * std::sqrt(c.rate));
    return v;
  }

  double weight_sum() const {
    double v = 0.0;
    for (const auto& c : components) v += c.weight;
    return v;
  }

  /// Integral of exp(-pi c x^2) against the pdf: sum_k w_k g_k / (g_k + c).
  double laplace_rational(double c) const {
    double v = 0.0;
    for (const auto& k : components) v += k.weight * k.rate / (k.rate + c);
    return v;
  }

  double slowest_rate() const {
    double slowest = components.front().rate;
    for (const auto& c : components) slowest = std::min(slowest, c.rate);
    return slowest;
  }

  /// Distance beyond which every component factor exp(-pi (g + extra_rate) x^2)
  /// is below `tiny`; integration upper cutoff. `extra_rate` accounts for an
  /// additional Gaussian factor multiplied onto the pdf.
  double support_cutoff(double tiny = 1e-16, double extra_rate = 0.0) const {
    return std::sqrt(-std::log(tiny) / (M_PI * (slowest_rate() + extra_rate)));
  }
};

/// Conditional law of the distance between the tagged user and one serving
/// role (MCell, first or second SCell), given a decoupled association case.
/// Defined pairs: cases 3 and 4 with all three roles, case 5 with SCell1 and
/// MCell only (case 5 has no connection to the second SCell).
///
/// Densities are implemented from the re-derived region integrals, in the
/// CDF-consistent form, normalized by the closed-form case probability and
/// the subcase symmetry factor 2.
class ConditionalDistanceDist {
 public:
  ConditionalDistanceDist(int case_id, Cell role, const Model& m)
      : case_id_(case_id), role_(role), alpha_(m.alpha()) {
    const double lm = m.lambda_m(), ls = m.lambda_s(), e = m.eta();
    p_case_ = case_probability(case_id, lm, ls, e);

    // (b_j, a_j) terms of the inner-region integral evaluated at the role
    // distance z: pdf(z) = (2 / P_case) * sum_j b_j e^{-pi a_j z^2} * f_base(z).
    struct Term {
      double b, a;
    };
    std::vector<Term> t;
    double base = 0.0;
    const double lme = lm * e, ls_over_e = ls / e;
    if (case_id == 3 && role == Cell::scell1) {
      base = ls;
      // exponents keep the eta scaling of the x_m > sqrt(eta) z limit; see
      // docs/model.md (the unscaled variant does not normalize)
      t = {{lm / (lm + ls_over_e), lme + ls}, {-lm / (lm + ls), (lm + ls) * e}};
    } else if (case_id == 3 && role == Cell::scell2) {
      base = ls;
      const double q = lme / (ls + lme);
      t = {{1.0, lm}, {-1.0, lme}, {-q, lm + ls_over_e}, {q, ls + lme}};
    } else if (case_id == 3 && role == Cell::mcell) {
      base = lm;
      t = {{1.0, ls_over_e}, {-1.0, ls}, {-1.0, 2.0 * ls_over_e}, {1.0, ls + ls_over_e}};
    } else if (case_id == 4 && role == Cell::scell1) {
      base = ls;
      t = {{ls / (lm + ls), lm + ls}, {lm / (lm + ls), (lm + ls) * e}, {-1.0, lme + ls}};
    } else if (case_id == 4 && role == Cell::scell2) {
      base = ls;
      const double q = ls / (ls + lme);
      t = {{1.0 - q, lm + ls_over_e}, {-1.0, lm + ls}, {q, ls + lme}};
    } else if (case_id == 4 && role == Cell::mcell) {
      base = lm;
      t = {{0.5, 2.0 * ls_over_e}, {0.5, 2.0 * ls}, {-1.0, ls + ls_over_e}};
    } else if (case_id == 5 && role == Cell::scell1) {
      base = ls;
      t = {{lm / (lm + ls), lm + ls}, {-lm / (lm + ls), (lm + ls) * e}};
    } else if (case_id == 5 && role == Cell::mcell) {
      base = lm;
      t = {{1.0, ls + ls_over_e}, {-1.0, 2.0 * ls}};
    } else {
      throw std::domain_error("ConditionalDistanceDist: undefined (case, role) pair: case " +
                              std::to_string(case_id) + " / " + cell_name(role));
    }

    // Fold the base Rayleigh factor in: component rate g = a + base, weight
    // w = (2 base / P_case) * b / g.
    mix_.components.reserve(t.size());
    for (const auto& term : t)
      mix_.components.push_back({2.0 * base * term.b / (p_case_ * (term.a + base)), term.a + base});
  }

  int case_id() const noexcept { return case_id_; }
  Cell role() const noexcept { return role_; }
  double alpha() const noexcept { return alpha_; }
  double case_prob() const noexcept { return p_case_; }
  const RayleighMixture& mixture() const noexcept { return mix_; }

  double pdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("conditional_pdf: x must be nonnegative");
    return mix_.pdf(x);
  }

  /// Numerical integral of the pdf on [0, x]; the closed-form CDF from the
  /// mixture is kept as an independent route for tests.
  double cdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("conditional_cdf: x must be nonnegative");
    const double hi = std::min(x, mix_.support_cutoff());
    if (hi <= 0.0) return 0.0;
    return integrate([this](double u) { return mix_.pdf(u); }, 0.0, hi, 1e-9).value;
  }

  double closed_cdf(double x) const { return mix_.closed_cdf(x); }
  double mean() const { return mix_.mean(); }

 private:
  int case_id_;
  Cell role_;
  double alpha_;
  double p_case_;
  RayleighMixture mix_;
};

/// Rejection sampler for a conditional distance: draws full Rayleigh triples,
/// classifies them, and accepts when the case matches, returning the
/// requested role's distance. Self-validating: the acceptance rate must match
/// the closed-form case probability.
class ConditionalSampler {
 public:
  ConditionalSampler(int case_id, Cell role, const Model& m)
      : case_id_(case_id), role_(role), m_(m), xm_{m.lambda_m()}, xs_{m.lambda_s()} {
    // probe pair validity up front
    ConditionalDistanceDist probe(case_id, role, m);
    (void)probe;
  }

  double draw(Stream& rng) {
    while (true) {
      ++trials_;
      const DistanceTriple t{xm_.sample(rng), xs_.sample(rng), xs_.sample(rng)};
      const AssociationSubcase sc = classify_by_orderings(t, m_.eta());
      if (sc.case_id != case_id_) continue;
      ++accepts_;
      return role_distance(t, sc);
    }
  }

  std::uint64_t trials() const noexcept { return trials_; }
  std::uint64_t accepts() const noexcept { return accepts_; }
  double acceptance_rate() const noexcept {
    return trials_ ? static_cast<double>(accepts_) / static_cast<double>(trials_) : 0.0;
  }

  /// Distance of the requested role inside an accepted triple. Subcase n.2
  /// mirrors the SCell indices.
  double role_distance(const DistanceTriple& t, const AssociationSubcase& sc) const {
    if (role_ == Cell::mcell) return t.x_m;
    const bool first_is_1 = (sc.subcase_id == 1);
    if (role_ == Cell::scell1) return first_is_1 ? t.x_1 : t.x_2;
    return first_is_1 ? t.x_2 : t.x_1;
  }

 private:
  int case_id_;
  Cell role_;
  Model m_;
  RayleighDist xm_, xs_;
  std::uint64_t trials_ = 0;
  std::uint64_t accepts_ = 0;
};

/// Spec'd sampling entry point; see ConditionalSampler for the counting
/// interface.
inline double sample_conditional(const ConditionalDistanceDist& d, const Model& m, Stream& rng) {
  ConditionalSampler s(d.case_id(), d.role(), m);
  return s.draw(rng);
}

}  // namespace dudc
