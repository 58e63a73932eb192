// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Incremental Bowyer-Watson insertion. Outside the convex hull every hull
// edge (u, w) carries a ghost triangle (u, w, infinity) whose "circumdisk" is
// the open half-plane beyond the edge plus the open edge itself, so points
// outside the current hull are inserted by the same cavity rule as points
// inside it and no artificial scaffold vertices ever reach the output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "pdcell/errors.hpp"
#include "pdcell/geometry.hpp"
#include "predicates.hpp"

namespace pdcell {
namespace {

using detail::incircle;
using detail::orient2d;

constexpr std::size_t kNone = Triangle::kNone;
constexpr std::size_t kGhost = std::numeric_limits<std::size_t>::max() - 1;

struct Cell {
  std::array<std::size_t, 3> v;
  std::array<std::size_t, 3> nb;
  bool alive;
};

std::size_t next(std::size_t i) { return i == 2 ? 0 : i + 1; }
std::size_t prev(std::size_t i) { return i == 0 ? 2 : i - 1; }

// Hilbert index of (x, y) on a 2^16 grid.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  const std::uint32_t n = 1u << 16;
  std::uint64_t d = 0;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

std::vector<std::size_t> hilbert_order(std::span<const Point2> pts) {
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max(xmax - xmin, ymax - ymin);
  const double scale = span > 0.0 ? 65535.0 / span : 0.0;
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto qx = static_cast<std::uint32_t>((pts[i].x - xmin) * scale);
    const auto qy = static_cast<std::uint32_t>((pts[i].y - ymin) * scale);
    keyed[i] = {hilbert_index(qx, qy), i};
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) order[i] = keyed[i].second;
  return order;
}

class Builder {
 public:
  explicit Builder(std::span<const Point2> pts) : pts_(pts) {}

  void run() {
    if (pts_.size() < 3) throw DegenerateInputError("delaunay_2d: need at least 3 points");
    const std::vector<std::size_t> order = hilbert_order(pts_);
    const std::size_t a = order[0];
    std::size_t b = kNone;
    std::size_t c = kNone;
    for (std::size_t i : order) {
      if (b == kNone) {
        if (!(pts_[i] == pts_[a])) b = i;
      } else if (orient2d(pts_[a], pts_[b], pts_[i]) != 0) {
        c = i;
        break;
      }
    }
    if (b == kNone) throw DegenerateInputError("delaunay_2d: fewer than 3 distinct points");
    if (c == kNone) throw DegenerateInputError("delaunay_2d: all points are collinear");
    seed_triangle(a, b, c);
    for (std::size_t i : order) {
      if (i != a && i != b && i != c) insert(i);
    }
  }

  Triangulation finish() const {
    std::vector<std::size_t> remap(cells_.size(), kNone);
    std::size_t count = 0;
    for (std::size_t t = 0; t < cells_.size(); ++t) {
      if (cells_[t].alive && !is_ghost(t)) remap[t] = count++;
    }
    std::vector<Triangle> out;
    out.reserve(count);
    for (std::size_t t = 0; t < cells_.size(); ++t) {
      if (remap[t] == kNone) continue;
      const Cell& cell = cells_[t];
      Triangle tri;
      tri.v = cell.v;
      for (std::size_t i = 0; i < 3; ++i) tri.neighbour[i] = remap[cell.nb[i]];
      circumcircle(pts_[cell.v[0]], pts_[cell.v[1]], pts_[cell.v[2]], tri);
      out.push_back(tri);
    }
    return Triangulation(std::vector<Point2>(pts_.begin(), pts_.end()), std::move(out));
  }

 private:
  static void circumcircle(Point2 a, Point2 b, Point2 c, Triangle& tri) {
    const double bx = b.x - a.x, by = b.y - a.y;
    const double cx = c.x - a.x, cy = c.y - a.y;
    const double det = 2.0 * (bx * cy - by * cx);
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double ux = (cy * b2 - by * c2) / det;
    const double uy = (bx * c2 - cx * b2) / det;
    tri.circumcentre = {a.x + ux, a.y + uy};
    tri.circumradius = std::hypot(ux, uy);
  }

  bool is_ghost(std::size_t t) const {
    const auto& v = cells_[t].v;
    return v[0] == kGhost || v[1] == kGhost || v[2] == kGhost;
  }

  std::size_t make_cell(std::size_t u, std::size_t w, std::size_t x) {
    Cell cell{{u, w, x}, {kNone, kNone, kNone}, true};
    if (!free_.empty()) {
      const std::size_t t = free_.back();
      free_.pop_back();
      cells_[t] = cell;
      return t;
    }
    cells_.push_back(cell);
    mark_.push_back(0);
    return cells_.size() - 1;
  }

  // Slot of `t` across the edge (u, w) as seen from the other side.
  std::size_t slot_of_edge(std::size_t t, std::size_t u, std::size_t w) const {
    const auto& v = cells_[t].v;
    for (std::size_t j = 0; j < 3; ++j) {
      if (v[next(j)] == u && v[prev(j)] == w) return j;
    }
    return kNone;
  }

  void seed_triangle(std::size_t a, std::size_t b, std::size_t c) {
    if (orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    const std::size_t t = make_cell(a, b, c);
    const std::array<std::size_t, 3> v = {a, b, c};
    std::array<std::size_t, 3> ghosts{};
    for (std::size_t i = 0; i < 3; ++i) {
      // Edge opposite v[i] runs v[i+1] -> v[i+2]; its ghost runs the other way.
      ghosts[i] = make_cell(v[prev(i)], v[next(i)], kGhost);
      cells_[t].nb[i] = ghosts[i];
      cells_[ghosts[i]].nb[2] = t;
    }
    // Ghost across edge opposite v[i] is (v[i+2], v[i+1], G); its edge
    // (v[i+1], G) is shared with the ghost across the edge opposite v[i+2].
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t g = ghosts[i];
      cells_[g].nb[0] = ghosts[prev(i)];
      cells_[g].nb[1] = ghosts[next(i)];
    }
    hint_ = t;
  }

  // Does p lie in the open circumdisk (or open half-plane) of cell t?
  bool conflicts(std::size_t t, Point2 p) const {
    const auto& v = cells_[t].v;
    for (std::size_t g = 0; g < 3; ++g) {
      if (v[g] != kGhost) continue;
      const Point2 u = pts_[v[next(g)]];
      const Point2 w = pts_[v[prev(g)]];
      const int o = orient2d(u, w, p);
      if (o != 0) return o > 0;
      if (u.x != w.x) return (p.x > std::min(u.x, w.x)) && (p.x < std::max(u.x, w.x));
      return (p.y > std::min(u.y, w.y)) && (p.y < std::max(u.y, w.y));
    }
    return incircle(pts_[v[0]], pts_[v[1]], pts_[v[2]], p) > 0;
  }

  // Visibility walk from the hint. Returns a real cell containing p (closed)
  // or a ghost cell whose half-plane contains p.
  std::size_t locate(Point2 p) {
    std::size_t t = hint_;
    std::size_t rotate = 0;
    const std::size_t limit = 4 * cells_.size() + 16;
    for (std::size_t steps = 0; steps < limit; ++steps) {
      const auto& cell = cells_[t];
      std::size_t cross = kNone;
      for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t i = (k + rotate) % 3;
        if (orient2d(pts_[cell.v[next(i)]], pts_[cell.v[prev(i)]], p) < 0) {
          cross = i;
          break;
        }
      }
      if (cross == kNone) return t;
      ++rotate;
      t = cell.nb[cross];
      if (is_ghost(t)) return t;
    }
    // Stalled walk: fall back to an exhaustive scan.
    for (std::size_t s = 0; s < cells_.size(); ++s) {
      if (cells_[s].alive && conflicts(s, p)) return s;
    }
    throw DegenerateInputError("delaunay_2d: point location failed");
  }

  void insert(std::size_t idx) {
    const Point2 p = pts_[idx];
    const std::size_t start = locate(p);
    if (!is_ghost(start)) {
      for (std::size_t vi : cells_[start].v) {
        if (pts_[vi] == p) return;  // duplicate point
      }
    }

    ++stamp_;
    cavity_.clear();
    boundary_.clear();
    cavity_.push_back(start);
    mark_[start] = stamp_;
    for (std::size_t k = 0; k < cavity_.size(); ++k) {
      const std::size_t t = cavity_[k];
      for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t n = cells_[t].nb[i];
        if (mark_[n] == stamp_) continue;
        if (conflicts(n, p)) {
          mark_[n] = stamp_;
          cavity_.push_back(n);
        } else {
          boundary_.push_back({cells_[t].v[next(i)], cells_[t].v[prev(i)], n});
        }
      }
    }
    for (std::size_t t : cavity_) {
      cells_[t].alive = false;
      free_.push_back(t);
    }

    created_.clear();
    for (const Edge& e : boundary_) {
      const std::size_t t = make_cell(e.u, e.w, idx);
      cells_[t].nb[2] = e.outside;
      const std::size_t j = slot_of_edge(e.outside, e.w, e.u);
      cells_[e.outside].nb[j] = t;
      created_.push_back(t);
    }
    // New cells form a fan around p; link consecutive fan members.
    for (std::size_t t : created_) {
      const std::size_t w = cells_[t].v[1];
      for (std::size_t s : created_) {
        if (cells_[s].v[0] == w) {
          cells_[t].nb[0] = s;
          cells_[s].nb[1] = t;
          break;
        }
      }
    }
    for (std::size_t t : created_) {
      if (!is_ghost(t)) {
        hint_ = t;
        break;
      }
    }
  }

  struct Edge {
    std::size_t u;
    std::size_t w;
    std::size_t outside;
  };

  std::span<const Point2> pts_;
  std::vector<Cell> cells_;
  std::vector<unsigned> mark_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> cavity_;
  std::vector<std::size_t> created_;
  std::vector<Edge> boundary_;
  unsigned stamp_ = 0;
  std::size_t hint_ = 0;
};

}  // namespace

Triangulation delaunay_2d(std::span<const Point2> points) {
  Builder builder(points);
  builder.run();
  return builder.finish();
}

Triangulation delaunay_2d(const PointSet& points) {
  const std::vector<Point2> planar = points.planar();
  return delaunay_2d(std::span<const Point2>(planar));
}

}  // namespace pdcell
