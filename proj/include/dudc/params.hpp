// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <string>

#include "dudc/errors.hpp"

namespace dudc {

inline double dbm_to_linear(double dbm) { return std::pow(10.0, dbm / 10.0); }  // milliwatts
inline double linear_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Model constants for the two-tier network: a macro-cell (MCell) tier and a
/// small-cell (SCell) tier, both homogeneous PPPs, plus the user tier.
/// Defaults are the evaluation parameterization (lambda_s at ratio 5).
struct NetworkParams {
  double lambda_m = 1.47e-5;      ///< MCell PPP intensity [1/m^2]
  double lambda_s = 5 * 1.47e-5;  ///< SCell PPP intensity [1/m^2]
  double lambda_d = 0.037;        ///< user PPP intensity [1/m^2]
  double p_m_dbm = 43.0;          ///< MCell transmit power [dBm]
  double p_s_dbm = 30.0;          ///< SCell transmit power [dBm]
  double p_d_dbm = 23.0;          ///< UE transmit power [dBm]
  double p0_dbm = 23.0;           ///< OLPC operating point; carried, unused while gamma == 0
  double gamma = 0.0;             ///< OLPC path-loss compensation factor
  double alpha = 4.0;             ///< path-loss exponent
  double bandwidth_hz = 20e6;     ///< system bandwidth [Hz]
  double window_side_m = 1650.0;  ///< square simulation window side [m], PPP mode only
};

/// Power-imbalance constant (P_m/P_s)^(2/alpha), powers in linear scale.
/// sqrt(eta) = (P_m/P_s)^(1/alpha) is the distance scale that converts
/// downlink power comparisons against the MCell into distance comparisons.
inline double eta(const NetworkParams& p) {
  return std::pow(dbm_to_linear(p.p_m_dbm) / dbm_to_linear(p.p_s_dbm), 2.0 / p.alpha);
}

/// Validated, immutable view of NetworkParams with linear powers and derived
/// constants computed once. Safe to share across concurrent workers.
class Model {
 public:
  explicit Model(const NetworkParams& p) : p_(p) {
    require_positive(p.lambda_m, "lambda_m");
    require_positive(p.lambda_s, "lambda_s");
    require_positive(p.lambda_d, "lambda_d");
    require_finite(p.p_m_dbm, "p_m_dbm");
    require_finite(p.p_s_dbm, "p_s_dbm");
    require_finite(p.p_d_dbm, "p_d_dbm");
    require_finite(p.p0_dbm, "p0_dbm");
    if (!(p.p_d_dbm < p.p_s_dbm))
      throw invalid_parameter("p_d_dbm", "power ordering requires p_d < p_s < p_m");
    if (!(p.p_s_dbm < p.p_m_dbm))
      throw invalid_parameter("p_s_dbm", "power ordering requires p_d < p_s < p_m");
    if (!(p.alpha > 2.0))
      throw invalid_parameter("alpha", "path-loss exponent must exceed 2");
    if (p.gamma != 0.0)
      throw invalid_parameter("gamma", "fractional path-loss compensation is not modeled; gamma must be 0");
    require_positive(p.window_side_m, "window_side_m");
    require_positive(p.bandwidth_hz, "bandwidth_hz");

    p_m_mw_ = dbm_to_linear(p.p_m_dbm);
    p_s_mw_ = dbm_to_linear(p.p_s_dbm);
    p_d_mw_ = dbm_to_linear(p.p_d_dbm);
    eta_ = std::pow(p_m_mw_ / p_s_mw_, 2.0 / p.alpha);
    sqrt_eta_ = std::sqrt(eta_);
  }

  const NetworkParams& params() const noexcept { return p_; }
  double lambda_m() const noexcept { return p_.lambda_m; }
  double lambda_s() const noexcept { return p_.lambda_s; }
  double lambda_d() const noexcept { return p_.lambda_d; }
  double alpha() const noexcept { return p_.alpha; }
  double bandwidth_hz() const noexcept { return p_.bandwidth_hz; }
  double window_side_m() const noexcept { return p_.window_side_m; }

  double p_m_mw() const noexcept { return p_m_mw_; }
  double p_s_mw() const noexcept { return p_s_mw_; }
  double p_d_mw() const noexcept { return p_d_mw_; }

  double eta() const noexcept { return eta_; }
  double sqrt_eta() const noexcept { return sqrt_eta_; }

  /// Interfering-user intensity: one dominant interferer per cell, so the
  /// thinned interferer PPP has the combined cell intensity.
  double lambda_id() const noexcept { return p_.lambda_m + p_.lambda_s; }

 private:
  static void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw invalid_parameter(field, "must be positive and finite");
  }
  static void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw invalid_parameter(field, "must be finite");
  }

  NetworkParams p_;
  double p_m_mw_, p_s_mw_, p_d_mw_;
  double eta_, sqrt_eta_;
};

inline Model validate(const NetworkParams& p) { return Model(p); }

}  // namespace dudc
