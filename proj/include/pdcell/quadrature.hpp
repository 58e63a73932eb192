// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Globally adaptive Gauss-Kronrod (10/21) quadrature in the style of
// QUADPACK's QAG: the interval with the largest error estimate is bisected
// until the summed error meets the requested tolerance.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace pdcell {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod abscissae on [0, 1]; odd entries are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208443446322, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_21(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double kronrod = kKronrodWeights[10] * f_centre;
  double gauss = 0.0;
  std::array<double, 10> lower{};
  std::array<double, 10> upper{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    lower[i] = f(centre - dx);
    upper[i] = f(centre + dx);
    const double pair = lower[i] + upper[i];
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * pair;
    }
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::fabs(f_centre - mean);
  for (std::size_t i = 0; i < 10; ++i) {
    asc += kKronrodWeights[i] * (std::fabs(lower[i] - mean) + std::fabs(upper[i] - mean));
  }
  asc *= std::fabs(half);
  double err = std::fabs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Integrates f over [a, b] to max(abs_tol, rel_tol * |I|). Breakpoints, if
/// given, must be strictly inside (a, b) and increasing; they seed the
/// initial panels so that kinks or boundary layers start resolved.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                           const std::vector<double>& breakpoints = {},
                           int max_panels = 4000) {
  std::priority_queue<detail::Panel> panels;
  QuadratureResult out;
  double left = a;
  auto push = [&](double lo, double hi) {
    detail::Panel p = detail::gauss_kronrod_21(f, lo, hi);
    out.evaluations += 21;
    out.value += p.value;
    out.error += p.error;
    panels.push(p);
  };
  for (double bp : breakpoints) {
    push(left, bp);
    left = bp;
  }
  push(left, b);

  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::fabs(out.value));
    if (out.error <= target) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= max_panels) {
      break;
    }
    detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      break;  // interval below double resolution
    }
    panels.pop();
    out.value -= worst.value;
    out.error -= worst.error;
    push(worst.a, mid);
    push(mid, worst.b);
  }
  // Recompute the sums to shed accumulated cancellation.
  double value = 0.0;
  double error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = error;
  if (!out.converged) {
    out.converged = error <= std::max(abs_tol, rel_tol * std::fabs(value));
  }
  return out;
}

}  // namespace pdcell
