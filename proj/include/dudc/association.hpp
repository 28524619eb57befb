// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "dudc/params.hpp"

namespace dudc {

enum class Cell : int { mcell = 0, scell1 = 1, scell2 = 2 };

inline const char* cell_name(Cell c) {
  switch (c) {
    case Cell::mcell: return "MCell";
    case Cell::scell1: return "SCell1";
    default: return "SCell2";
  }
}

/// Distances from the tagged user to its candidate serving cells. x_1 and x_2
/// are exchangeable: no ordering between the two SCell distances is assumed.
struct DistanceTriple {
  double x_m;  ///< distance to the nearest MCell [m]
  double x_1;  ///< distance to SCell 1 [m]
  double x_2;  ///< distance to SCell 2 [m]
};

/// Serving cells of the four logical links: first/second uplink and downlink.
struct LinkRoles {
  Cell ul1, dl1, ul2, dl2;
};

struct AssociationSubcase {
  int case_id;     ///< 1..6
  int subcase_id;  ///< 1 or 2; the mirror subcase swaps SCell 1 and SCell 2
  LinkRoles roles;
};

/// Role table for the twelve subcases. Subcase n.2 is n.1 with the SCells
/// exchanged.
inline LinkRoles subcase_roles(int case_id, int subcase_id) {
  const Cell s_near = (subcase_id == 1) ? Cell::scell1 : Cell::scell2;
  const Cell s_far = (subcase_id == 1) ? Cell::scell2 : Cell::scell1;
  const Cell m = Cell::mcell;
  switch (case_id) {
    case 1: return {m, m, s_near, s_near};
    case 2: return {s_near, s_near, m, m};
    case 3: return {s_near, s_near, s_far, m};
    case 4: return {s_near, m, s_far, s_near};
    case 5: return {s_near, m, m, s_near};
    case 6: return {s_near, s_near, s_far, s_far};
    default: throw std::domain_error("subcase_roles: case_id must be 1..6");
  }
}

namespace detail {

// Strict precedence on exact ties: MCell before SCell 1 before SCell 2.
// Ties are measure zero; the fixed order keeps both classifiers deterministic
// and in agreement.
inline bool precedes(double da, Cell a, double db, Cell b) {
  if (da != db) return da < db;
  return static_cast<int>(a) < static_cast<int>(b);
}

inline void check_triple(const DistanceTriple& t) {
  if (!(t.x_m > 0.0) || !(t.x_1 > 0.0) || !(t.x_2 > 0.0) || !std::isfinite(t.x_m) ||
      !std::isfinite(t.x_1) || !std::isfinite(t.x_2))
    throw std::domain_error("DistanceTriple: distances must be positive and finite");
}

}  // namespace detail

/// Ranking classifier: orders the three candidates by uplink received power
/// (pure distance, the UE transmits with the same power to any cell) and by
/// downlink received power (P_m x_m^-a against P_s x_i^-a, i.e. x_m against
/// sqrt(eta) x_i), then maps the two (best, second) pairs to a subcase. This
/// is the defining association rule; the inequality classifier below is the
/// reduced per-region form.
inline AssociationSubcase classify_by_orderings(const DistanceTriple& t, double eta_value) {
  detail::check_triple(t);
  if (!(eta_value >= 1.0)) throw std::domain_error("classify: eta must be >= 1");
  const double se = std::sqrt(eta_value);
  using detail::precedes;

  const bool m_ul_first_vs1 = precedes(t.x_m, Cell::mcell, t.x_1, Cell::scell1);
  const bool m_ul_first_vs2 = precedes(t.x_m, Cell::mcell, t.x_2, Cell::scell2);
  const bool s1_before_s2 = precedes(t.x_1, Cell::scell1, t.x_2, Cell::scell2);
  const int ul_rank_m = 1 + (m_ul_first_vs1 ? 0 : 1) + (m_ul_first_vs2 ? 0 : 1);

  const bool m_dl_first_vs1 = precedes(t.x_m, Cell::mcell, se * t.x_1, Cell::scell1);
  const bool m_dl_first_vs2 = precedes(t.x_m, Cell::mcell, se * t.x_2, Cell::scell2);
  const int dl_rank_m = 1 + (m_dl_first_vs1 ? 0 : 1) + (m_dl_first_vs2 ? 0 : 1);

  // The MCell can only rank better in DL than in UL (sqrt(eta) >= 1). In
  // particular a first DL connection to a SCell together with a first UL
  // connection to the MCell cannot occur.
  if (dl_rank_m > ul_rank_m)
    throw std::logic_error("classify_by_orderings: DL rank of MCell worse than UL rank");

  const int sub = s1_before_s2 ? 1 : 2;
  int case_id = 0;
  if (ul_rank_m == 1) {
    case_id = 1;  // dl_rank_m == 1 is guaranteed by the check above
  } else if (ul_rank_m == 2) {
    case_id = (dl_rank_m == 1) ? 5 : 2;
  } else {
    case_id = (dl_rank_m == 1) ? 4 : (dl_rank_m == 2) ? 3 : 6;
  }
  return {case_id, sub, subcase_roles(case_id, sub)};
}

/// Region classifier: evaluates the twelve restricting-inequality rows
/// directly. sqrt(eta) scales every downlink comparison against the MCell.
/// Exactly one row must hold; anything else is an internal consistency
/// failure.
inline AssociationSubcase classify_by_inequalities(const DistanceTriple& t, double eta_value) {
  detail::check_triple(t);
  if (!(eta_value >= 1.0)) throw std::domain_error("classify: eta must be >= 1");
  const double se = std::sqrt(eta_value);
  const double xm = t.x_m, x1 = t.x_1, x2 = t.x_2;
  using detail::precedes;
  const Cell M = Cell::mcell, S1 = Cell::scell1, S2 = Cell::scell2;

  // Comparison helpers carrying the owning cells so tie precedence matches
  // the ranking classifier. "sNbM" reads: the scaled SCell-N distance beats
  // the MCell in downlink.
  const auto lt = [&](double a, Cell ca, double b, Cell cb) { return precedes(a, ca, b, cb); };
  const bool m_lt_1 = lt(xm, M, x1, S1), m_lt_2 = lt(xm, M, x2, S2);
  const bool one_lt_2 = lt(x1, S1, x2, S2);
  const bool one_lt_m = lt(x1, S1, xm, M), two_lt_m = lt(x2, S2, xm, M);
  const bool s1_dl_beats_m = lt(se * x1, S1, xm, M);  // x_1 < x_m / sqrt(eta)
  const bool s2_dl_beats_m = lt(se * x2, S2, xm, M);
  const bool m_dl_beats_s1 = lt(xm, M, se * x1, S1);  // x_m < sqrt(eta) x_1
  const bool m_dl_beats_s2 = lt(xm, M, se * x2, S2);

  int case_id = 0, sub = 0, matches = 0;
  const auto row = [&](bool cond, int c, int s) {
    if (cond) {
      case_id = c;
      sub = s;
      ++matches;
    }
  };

  row(m_lt_1 && one_lt_2, 1, 1);                                     // x_m < x_1 < x_2
  row(m_lt_2 && !one_lt_2, 1, 2);                                    // x_m < x_2 < x_1
  row(s1_dl_beats_m && m_lt_2, 2, 1);                                // se x_1 < x_m < x_2
  row(s2_dl_beats_m && m_lt_1, 2, 2);                                // se x_2 < x_m < x_1
  row(s1_dl_beats_m && m_dl_beats_s2 && two_lt_m, 3, 1);             // x_1 < x_m/se < x_2 < x_m
  row(s2_dl_beats_m && m_dl_beats_s1 && one_lt_m, 3, 2);             // x_2 < x_m/se < x_1 < x_m
  row(one_lt_2 && two_lt_m && m_dl_beats_s1, 4, 1);                  // x_1 < x_2 < x_m < se x_1
  row(!one_lt_2 && one_lt_m && m_dl_beats_s2, 4, 2);                 // x_2 < x_1 < x_m < se x_2
  row(m_lt_2 && one_lt_m && m_dl_beats_s1, 5, 1);                    // x_m < x_2, x_1 < x_m < se x_1
  row(m_lt_1 && two_lt_m && m_dl_beats_s2, 5, 2);                    // x_m < x_1, x_2 < x_m < se x_2
  row(one_lt_2 && s2_dl_beats_m, 6, 1);                              // x_1 < x_2 < x_m/se
  row(!one_lt_2 && s1_dl_beats_m, 6, 2);                             // x_2 < x_1 < x_m/se

  if (matches != 1)
    throw std::logic_error("classify_by_inequalities: triple matched " + std::to_string(matches) +
                           " rows (must be exactly 1)");
  return {case_id, sub, subcase_roles(case_id, sub)};
}

inline AssociationSubcase classify_by_orderings(const DistanceTriple& t, const Model& m) {
  return classify_by_orderings(t, m.eta());
}
inline AssociationSubcase classify_by_inequalities(const DistanceTriple& t, const Model& m) {
  return classify_by_inequalities(t, m.eta());
}

/// Closed-form probability of one association case under the independent
/// Rayleigh distance model. Case 5 is integrated directly over its region
/// (f_1 outer, f_m over (x_1, sqrt(eta) x_1), x_2 beyond x_m); the often-seen
/// subtraction shortcut 2 Pr(x_1 < x_m < sqrt(eta) x_1) - P_case4 double
/// counts parts of cases 3 and 4 and does not normalize.
inline double case_probability(int case_id, double lambda_m, double lambda_s, double eta_value) {
  if (!(lambda_m > 0.0) || !(lambda_s > 0.0))
    throw std::domain_error("case_probability: intensities must be positive");
  if (!(eta_value >= 1.0)) throw std::domain_error("case_probability: eta must be >= 1");
  const double lm = lambda_m, ls = lambda_s, e = eta_value;
  const double lme = lm * e, lse = ls * e;
  switch (case_id) {
    case 1:
      return lm / (2.0 * ls + lm);
    case 2:
      return 2.0 * ls * lm / ((ls + lm) * (ls + lse + lme));
    case 3:
      return 2.0 * lm * ls / ((lm + ls / e) * (lme + 2.0 * ls)) -
             2.0 * lm * ls / ((lm + ls) * (lme + lse + ls));
    case 4:
      return 2.0 * (ls * ls / (lm + ls) * (1.0 / (lm + 2.0 * ls) - 1.0 / (lme + ls + lse)) -
                    ls / (lme + 2.0 * ls) + ls / (lme + lse + ls));
    case 5:
      return 2.0 * lm * ls / (lm + ls) * (1.0 / (lm + 2.0 * ls) - 1.0 / (ls + lme + lse));
    case 6:
      return 2.0 * ls * ls / ((lme + ls) * (lme + 2.0 * ls));
    default:
      throw std::domain_error("case_probability: case_id must be 1..6");
  }
}

/// The six case probabilities plus the three aggregates plotted against the
/// SCell density ratio: decoupled (cases 3-5), coupled MCell+SCell dual
/// connectivity (cases 1-2), and coupled SCell-only (case 6).
struct CaseProbabilities {
  std::array<double, 6> p{};

  double dude() const { return p[2] + p[3] + p[4]; }
  double dualconn() const { return p[0] + p[1]; }
  double scell() const { return p[5]; }
  double sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }
};

inline CaseProbabilities all_case_probabilities(double lambda_m, double lambda_s, double eta_value) {
  CaseProbabilities out;
  for (int c = 1; c <= 6; ++c) out.p[c - 1] = case_probability(c, lambda_m, lambda_s, eta_value);
  return out;
}

inline CaseProbabilities all_case_probabilities(const Model& m) {
  return all_case_probabilities(m.lambda_m(), m.lambda_s(), m.eta());
}

/// Two-cell special case (one MCell, one SCell): probability that the best
/// uplink and best downlink cells disagree. Decoupling happens exactly on
/// x_1 < x_m < sqrt(eta) x_1; the opposite split is impossible for P_m > P_s.
inline double two_cell_decoupling_probability(double lambda_m, double lambda_s, double eta_value) {
  if (!(lambda_m > 0.0) || !(lambda_s > 0.0))
    throw std::domain_error("two_cell_decoupling_probability: intensities must be positive");
  if (!(eta_value >= 1.0)) throw std::domain_error("two_cell_decoupling_probability: eta must be >= 1");
  return lambda_s / (lambda_s + lambda_m) - lambda_s / (lambda_m * eta_value + lambda_s);
}

}  // namespace dudc
