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
#include <utility>

namespace dudc {

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated |K15 - G7| over accepted panels
};

namespace detail {

// Gauss-7 / Kronrod-15 pair on [-1, 1] (QUADPACK constants).
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the embedded 7-point rule (nodes 1, 3, 5, 7 above).
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15_panel(F& f, double a, double b, double& k15, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kronrod_x[i];
    const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
    fk += kronrod_w[i] * fv;
    // odd indices are the embedded Gauss-7 nodes; i == 7 is its center node
    if (i % 2 == 1) fg += gauss_w[i / 2] * fv;
  }
  k15 = h * fk;
  err = std::abs(h * (fk - fg));
}

}  // namespace detail

/// Adaptive Gauss–Kronrod (G7–K15) integration of f over the finite interval
/// [a, b] to an absolute tolerance. Bisects until each panel's |K15 - G7|
/// estimate fits its tolerance share; throws on non-finite integrand values.
template <class F>
IntegralResult integrate(F&& f, double a, double b, double abs_tol = 1e-9, int max_depth = 28) {
  struct Frame {
    double a, b, tol;
    int depth;
  };
  if (!(b >= a)) throw std::invalid_argument("integrate: requires b >= a");
  if (a == b) return {0.0, 0.0};

  IntegralResult total;
  // Explicit stack; worst case 2^max_depth panels is prevented by the depth cap.
  std::array<Frame, 2048> stack;
  std::size_t top = 0;
  stack[top++] = {a, b, abs_tol, 0};
  while (top > 0) {
    Frame fr = stack[--top];
    double k15, err;
    detail::gk15_panel(f, fr.a, fr.b, k15, err);
    if (!std::isfinite(k15)) throw std::domain_error("integrate: non-finite integrand");
    if (err <= fr.tol || fr.depth >= max_depth || top + 2 >= stack.size()) {
      total.value += k15;
      total.abs_error += err;
    } else {
      const double mid = 0.5 * (fr.a + fr.b);
      stack[top++] = {fr.a, mid, 0.5 * fr.tol, fr.depth + 1};
      stack[top++] = {mid, fr.b, 0.5 * fr.tol, fr.depth + 1};
    }
  }
  return total;
}

}  // namespace dudc
