// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdcell/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "pdcell/distribution.hpp"
#include "pdcell/errors.hpp"
#include "pdcell/specfun.hpp"

namespace pdcell {
namespace {

constexpr double kPi = std::numbers::pi;

double dist2(Point2 a, Point2 b) { return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y); }

// Signed distance of p from the directed line a -> b (positive on the left).
double signed_distance(Point2 a, Point2 b, Point2 p) {
  const double len = std::sqrt(dist2(a, b));
  return ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len;
}

CooperationSet vertex_set(const Triangle& t) { return {t.v, CooperationSet::Placement::kInterior}; }

}  // namespace

void NetworkScenario::validate() const {
  if (!(lambda_bs > 0.0) || !(lambda_ue > 0.0)) throw DomainError("scenario: intensities must be positive");
  if (!(p_active >= 0.0) || !(p_sleep >= 0.0)) throw DomainError("scenario: powers must be non-negative");
  if (p_sleep > p_active) throw DomainError("scenario: sleep power exceeds active power");
}

CooperationSet cooperation_set(Point2 ue, const Triangulation& tri) {
  const Location loc = tri.locate(ue);
  if (loc.kind == Location::Kind::kOutside) throw OutOfCoverageError("cooperation_set: UE outside the BS hull");
  const auto& tris = tri.triangles();
  const auto& verts = tri.vertices();

  if (loc.kind == Location::Kind::kOnVertex) {
    const std::size_t vertex = tris[loc.triangle].v[static_cast<std::size_t>(loc.slot)];
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& v = tris[t].v;
      if (v[0] == vertex || v[1] == vertex || v[2] == vertex) return vertex_set(tris[t]);
    }
  }

  // Near-edge test with a relative tolerance; the exact locator only flags
  // points that are exactly collinear.
  std::size_t t = loc.triangle;
  int edge = loc.kind == Location::Kind::kOnEdge ? loc.slot : -1;
  if (edge < 0) {
    for (int i = 0; i < 3; ++i) {
      const Point2 a = verts[tris[t].v[(i + 1) % 3]];
      const Point2 b = verts[tris[t].v[(i + 2) % 3]];
      if (std::fabs(signed_distance(a, b, ue)) < 1e-9 * std::sqrt(dist2(a, b))) {
        edge = i;
        break;
      }
    }
  }
  if (edge < 0) return vertex_set(tris[t]);

  const std::size_t other = tris[t].neighbour[static_cast<std::size_t>(edge)];
  if (other == Triangle::kNone) return {tris[t].v, CooperationSet::Placement::kOnEdge};
  const std::size_t a = tris[t].v[static_cast<std::size_t>((edge + 1) % 3)];
  const std::size_t b = tris[t].v[static_cast<std::size_t>((edge + 2) % 3)];
  const std::size_t c = tris[t].v[static_cast<std::size_t>(edge)];
  std::size_t d = Triangle::kNone;
  for (std::size_t v : tris[other].v) {
    if (v != a && v != b) d = v;
  }
  const double dc = dist2(ue, verts[c]);
  const double dd = dist2(ue, verts[d]);
  const std::size_t third = dc < dd ? c : (dd < dc ? d : std::min(c, d));
  return {{a, b, third}, CooperationSet::Placement::kOnEdge};
}

double void_probability_closed_form(const NetworkScenario& s) {
  s.validate();
  const MeijerGSpec g{3, 2, {0.5, 1.0, 1.5}, {1.0, 5.0 / 6.0, 7.0 / 6.0}};
  const double r = s.lambda_bs / s.lambda_ue;
  const double z = 16.0 * kPi * kPi * r * r / 27.0;
  return 3.0 / (2.0 * kPi) * meijer_g(g, z);
}

double void_probability_laplace(const NetworkScenario& s, double rel_tol) {
  s.validate();
  const CellDistribution law = CellDistribution::build(2, s.lambda_bs);
  const double lu = s.lambda_ue;
  return law.expectation([lu](double x) { return std::exp(-lu * x); }, rel_tol);
}

double void_probability_analytic(const NetworkScenario& s) {
  const double closed = void_probability_closed_form(s);
  const double quad = void_probability_laplace(s);
  if (!(std::fabs(closed - quad) <= 1e-6)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "void probability: closed form " << closed << " disagrees with quadrature " << quad;
    throw ConvergenceError(msg.str(), quad, closed);
  }
  return closed;
}

double void_probability_bound(const NetworkScenario& s) {
  s.validate();
  return std::exp(-s.lambda_ue / (2.0 * s.lambda_bs));
}

MonteCarloEstimate void_probability_mc(const NetworkScenario& s, double box_side, int replicates,
                                       std::uint64_t seed) {
  s.validate();
  if (replicates < 2) throw ConfigurationError("void_probability_mc: need at least 2 replicates");
  const double buffer = default_buffer(s.lambda_bs);
  if (!(box_side > 2.0 * buffer)) throw ConfigurationError("void_probability_mc: box smaller than the buffer");
  const double inner = box_side - 2.0 * buffer;
  if (2.0 * s.lambda_bs * inner * inner < 1000.0) {
    throw ConfigurationError("void_probability_mc: box too small for 1000 interior cells per replicate");
  }
  const AxisBox box = AxisBox::square(box_side);
  std::vector<double> fractions;
  std::size_t cells = 0;
  for (int r = 0; r < replicates; ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    StreamEngine bs_engine = make_stream(seed, 2 * ur);
    StreamEngine ue_engine = make_stream(seed, 2 * ur + 1);
    const PointSet bs = sample_ppp(s.lambda_bs, box, bs_engine, seed);
    const PointSet ue = sample_ppp(s.lambda_ue, box, ue_engine, seed);
    const Triangulation tri = delaunay_2d(bs);
    std::vector<char> occupied(tri.size(), 0);
    std::size_t hint = 0;
    for (const Point2& p : ue.planar()) {
      const Location loc = tri.locate(p, hint);
      if (loc.kind == Location::Kind::kOutside) continue;
      occupied[loc.triangle] = 1;
      hint = loc.triangle;
    }
    const std::vector<std::size_t> interior = interior_triangles(tri, box, buffer);
    if (interior.empty()) continue;
    std::size_t empty = 0;
    for (std::size_t t : interior) empty += occupied[t] ? 0 : 1;
    fractions.push_back(static_cast<double>(empty) / static_cast<double>(interior.size()));
    cells += interior.size();
  }
  const double n = static_cast<double>(fractions.size());
  double mean = 0.0;
  for (double f : fractions) mean += f;
  mean /= n;
  double ss = 0.0;
  for (double f : fractions) ss += (f - mean) * (f - mean);
  const double sd = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), fractions.size(), cells};
}

PowerReport average_power(const NetworkScenario& s, double p_void) {
  if (!(p_void >= 0.0 && p_void <= 1.0)) throw DomainError("average_power: probability outside [0, 1]");
  return {(1.0 - p_void) * s.p_active + p_void * s.p_sleep, (1.0 - p_void) * s.p_active};
}

double uniform_cells_void_fraction(int m, int n, std::uint64_t seed) {
  if (m < 0 || n < 1) throw DomainError("uniform_cells_void_fraction: need m >= 0 and n >= 1");
  StreamEngine engine = make_stream(seed, 0);
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  const long long total = static_cast<long long>(m) * n;
  for (long long k = 0; k < total; ++k) {
    hit[static_cast<std::size_t>(engine() % static_cast<std::uint64_t>(n))] = 1;
  }
  const auto empty = std::count(hit.begin(), hit.end(), 0);
  return static_cast<double>(empty) / n;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "ratio,p_analytic,p_bound,p_mc,p_mc_stderr,avg_power\n";
  char buf[256];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.ratio, r.p_analytic, r.p_bound,
                  r.p_mc, r.p_mc_stderr, r.avg_power);
    out << buf;
  }
}

}  // namespace pdcell
