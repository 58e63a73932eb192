// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force oracles shared by the unit tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "pdcell/distribution.hpp"
#include "pdcell/geometry.hpp"
#include "pdcell/quadrature.hpp"

namespace pdcell::testing {

/// int_0^x pdf by a power-law head below 1e-6 * mean and adaptive
/// Gauss-Kronrod above it.
inline double integral_of_pdf(const CellDistribution& law, double x) {
  const double x0 = std::min(x, 1e-6 * law.mean());
  const double power = 2.0 * law.small_x_limit().exponent - 1.0;
  const double head = law.pdf(x0) * x0 / (power + 1.0);
  if (x <= x0) return head;
  std::vector<double> breaks;
  for (double t = 10.0 * x0; t < x; t *= 10.0) breaks.push_back(t);
  const QuadratureResult r = integrate([&](double t) { return law.pdf(t); }, x0, x, 1e-11, 0.0, breaks);
  return head + r.value;
}

/// Number of strict interior local maxima plus a maximum at either end.
inline int count_local_maxima(const std::vector<double>& v) {
  int peaks = 0;
  const std::size_t n = v.size();
  if (n >= 2 && v[0] > v[1]) ++peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) ++peaks;
  }
  if (n >= 2 && v[n - 1] > v[n - 2]) ++peaks;
  return peaks;
}

inline double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

/// Convex hull (counter-clockwise) by the monotone chain.
inline std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

inline double polygon_area(const std::vector<Point2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 p = poly[i];
    const Point2 q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::fabs(a);
}

/// Counts (triangle, point) pairs with the point strictly inside the
/// circumcircle, using a relative tolerance on the radius.
inline std::size_t empty_circle_violations(const Triangulation& tri, std::span<const Point2> pts) {
  std::size_t bad = 0;
  for (const Triangle& t : tri.triangles()) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == t.v[0] || i == t.v[1] || i == t.v[2]) continue;
      const double d = std::hypot(pts[i].x - t.circumcentre.x, pts[i].y - t.circumcentre.y);
      if (d < t.circumradius * (1.0 - 1e-9)) ++bad;
    }
  }
  return bad;
}

/// Triangle in which all barycentric coordinates of p are positive, by
/// linear scan; Triangle::kNone if none.
inline std::size_t barycentric_owner(const Triangulation& tri, Point2 p) {
  const auto& v = tri.vertices();
  for (std::size_t k = 0; k < tri.size(); ++k) {
    const auto& t = tri.triangles()[k];
    const Point2 a = v[t.v[0]], b = v[t.v[1]], c = v[t.v[2]];
    const double det = cross(a, b, c);
    const double l1 = cross(p, b, c) / det;
    const double l2 = cross(a, p, c) / det;
    const double l3 = 1.0 - l1 - l2;
    if (l1 > 0.0 && l2 > 0.0 && l3 > 0.0) return k;
  }
  return Triangle::kNone;
}

}  // namespace pdcell::testing
