// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdcell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "pdcell/errors.hpp"
#include "predicates.hpp"

namespace pdcell {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53-bit uniform on [0, 1), independent of the standard library's
// distribution implementations.
double uniform01(StreamEngine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

double triangle_area(Point2 a, Point2 b, Point2 c) {
  return 0.5 * std::fabs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

}  // namespace

double AxisBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

bool AxisBox::contains(std::span<const double> point) const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (point[i] < lower[i] || point[i] > upper[i]) return false;
  }
  return true;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  const std::uint64_t mixed = splitmix64(state);
  state = mixed ^ (stream * 0xd1b54a32d192ed03ULL);
  splitmix64(state);
  return splitmix64(state);
}

PointSet::PointSet(AxisBox box, std::vector<double> coords, std::uint64_t seed)
    : box_(std::move(box)), coords_(std::move(coords)), seed_(seed) {
  if (box_.lower.size() != box_.upper.size() || box_.lower.empty()) {
    throw DomainError("PointSet: malformed box");
  }
  if (coords_.size() % box_.lower.size() != 0) {
    throw DomainError("PointSet: coordinate count is not a multiple of the dimension");
  }
}

std::vector<Point2> PointSet::planar() const {
  if (dimension() != 2) throw DomainError("PointSet::planar: dimension is not 2");
  std::vector<Point2> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {coords_[2 * i], coords_[2 * i + 1]};
  return out;
}

PointSet sample_ppp(double intensity, const AxisBox& box, StreamEngine& engine, std::uint64_t seed_tag) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw DomainError("sample_ppp: intensity must be positive");
  }
  if (box.lower.empty() || box.lower.size() != box.upper.size()) {
    throw DomainError("sample_ppp: malformed box");
  }
  for (std::size_t i = 0; i < box.lower.size(); ++i) {
    if (!(box.upper[i] > box.lower[i])) throw DomainError("sample_ppp: degenerate box");
  }
  std::poisson_distribution<long long> count_law(intensity * box.volume());
  const auto n = static_cast<std::size_t>(count_law(engine));
  const std::size_t d = box.lower.size();
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      coords[i * d + k] = box.lower[k] + (box.upper[k] - box.lower[k]) * uniform01(engine);
    }
  }
  return PointSet(box, std::move(coords), seed_tag);
}

PointSet sample_ppp(double intensity, const AxisBox& box, std::uint64_t seed) {
  StreamEngine engine = make_stream(seed, 0);
  return sample_ppp(intensity, box, engine, seed);
}

Triangulation::Triangulation(std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {}

double Triangulation::area(std::size_t t) const {
  const Triangle& tri = triangles_.at(t);
  return triangle_area(vertices_[tri.v[0]], vertices_[tri.v[1]], vertices_[tri.v[2]]);
}

double Triangulation::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += area(t);
  return sum;
}

Location Triangulation::locate(Point2 p, std::size_t hint) const {
  if (triangles_.empty()) return {};
  auto classify = [&](std::size_t t, const std::array<int, 3>& o) {
    int zeros = 0;
    int zero_slot = -1;
    int nonzero_slot = -1;
    for (int i = 0; i < 3; ++i) {
      if (o[i] == 0) {
        ++zeros;
        zero_slot = i;
      } else {
        nonzero_slot = i;
      }
    }
    if (zeros == 0) return Location{Location::Kind::kInside, t, -1};
    if (zeros == 1) return Location{Location::Kind::kOnEdge, t, zero_slot};
    return Location{Location::Kind::kOnVertex, t, nonzero_slot};
  };
  auto orientations = [&](std::size_t t) {
    const Triangle& tri = triangles_[t];
    std::array<int, 3> o{};
    for (std::size_t i = 0; i < 3; ++i) {
      o[i] = detail::orient2d(vertices_[tri.v[(i + 1) % 3]], vertices_[tri.v[(i + 2) % 3]], p);
    }
    return o;
  };

  std::size_t t = hint < triangles_.size() ? hint : 0;
  std::size_t rotate = 0;
  for (std::size_t steps = 0; steps < 4 * triangles_.size() + 16; ++steps) {
    const std::array<int, 3> o = orientations(t);
    std::size_t cross = Triangle::kNone;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t i = (k + rotate) % 3;
      if (o[i] < 0) {
        cross = i;
        break;
      }
    }
    if (cross == Triangle::kNone) return classify(t, o);
    ++rotate;
    const std::size_t n = triangles_[t].neighbour[cross];
    if (n == Triangle::kNone) return {};  // beyond a hull edge
    t = n;
  }
  for (std::size_t s = 0; s < triangles_.size(); ++s) {
    const std::array<int, 3> o = orientations(s);
    if (o[0] >= 0 && o[1] >= 0 && o[2] >= 0) return classify(s, o);
  }
  return {};
}

double simplex_volume(std::span<const std::vector<double>> vertices) {
  if (vertices.empty()) throw DomainError("simplex_volume: no vertices");
  const std::size_t d = vertices.size() - 1;
  if (d == 0) throw DomainError("simplex_volume: need d + 1 >= 2 vertices");
  for (const auto& v : vertices) {
    if (v.size() != d) throw DomainError("simplex_volume: expected d + 1 vertices of dimension d");
  }
  std::vector<double> m(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = vertices[r + 1][c] - vertices[0][c];
  }
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::fabs(m[r * d + col]) > std::fabs(m[pivot * d + col])) pivot = r;
    }
    if (m[pivot * d + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < d; ++c) std::swap(m[pivot * d + c], m[col * d + c]);
      det = -det;
    }
    const double diag = m[col * d + col];
    det *= diag;
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = m[r * d + col] / diag;
      for (std::size_t c = col; c < d; ++c) m[r * d + c] -= f * m[col * d + c];
    }
  }
  double factorial = 1.0;
  for (std::size_t k = 2; k <= d; ++k) factorial *= static_cast<double>(k);
  return std::fabs(det) / factorial;
}

double default_buffer(double intensity) {
  if (!(intensity > 0.0)) throw DomainError("default_buffer: intensity must be positive");
  return 5.0 / std::sqrt(intensity);
}

std::vector<std::size_t> interior_triangles(const Triangulation& tri, const AxisBox& window, double buffer,
                                            CellSelection selection) {
  if (window.dimension() != 2) throw DomainError("interior_triangles: window must be planar");
  const double x0 = window.lower[0] + buffer, x1 = window.upper[0] - buffer;
  const double y0 = window.lower[1] + buffer, y1 = window.upper[1] - buffer;
  auto inside = [&](const Point2& p) { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; };
  std::vector<std::size_t> out;
  const auto& verts = tri.vertices();
  for (std::size_t t = 0; t < tri.size(); ++t) {
    const Triangle& cell = tri.triangles()[t];
    const bool keep = selection == CellSelection::kCircumcentre
                          ? inside(cell.circumcentre)
                          : inside(verts[cell.v[0]]) && inside(verts[cell.v[1]]) && inside(verts[cell.v[2]]);
    if (keep) out.push_back(t);
  }
  return out;
}

std::vector<double> sample_cell_volumes(double intensity, double box_side, double buffer,
                                        std::size_t n_target, std::uint64_t seed,
                                        CellSampleOptions options) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw ConfigurationError("sample_cell_volumes: intensity must be positive");
  }
  if (!(box_side > 0.0)) throw ConfigurationError("sample_cell_volumes: box side must be positive");
  if (!(buffer >= 0.0)) throw ConfigurationError("sample_cell_volumes: buffer must be non-negative");
  if (buffer >= 0.5 * box_side) {
    throw ConfigurationError("sample_cell_volumes: buffer must be smaller than half the box side");
  }
  if (n_target == 0) throw ConfigurationError("sample_cell_volumes: target count must be positive");
  const double inner = box_side - 2.0 * buffer;
  if (2.0 * intensity * inner * inner < 1.0) {
    throw ConfigurationError("sample_cell_volumes: buffered window holds less than one expected cell");
  }

  const AxisBox box = AxisBox::square(box_side);
  auto realise = [&](std::uint64_t r) {
    StreamEngine engine = make_stream(seed, r);
    const PointSet pts = sample_ppp(intensity, box, engine, seed);
    std::vector<double> volumes;
    try {
      const Triangulation tri = delaunay_2d(pts);
      for (std::size_t t : interior_triangles(tri, box, buffer, options.selection)) volumes.push_back(tri.area(t));
    } catch (const DegenerateInputError&) {
      // A realisation with fewer than three points contributes nothing.
    }
    return volumes;
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  std::vector<double> out;
  std::uint64_t next = 0;
  while (out.size() < n_target) {
    std::vector<std::vector<double>> batch(threads);
    if (threads == 1) {
      batch[0] = realise(next);
    } else {
      std::vector<std::thread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] { batch[w] = realise(next + w); });
      }
      for (auto& worker : workers) worker.join();
    }
    for (const auto& volumes : batch) {
      if (out.size() >= n_target) break;
      out.insert(out.end(), volumes.begin(), volumes.end());
    }
    next += threads;
  }
  return out;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_critical_value_1pct(std::size_t n) {
  if (n == 0) throw DomainError("ks_critical_value_1pct: n must be positive");
  return 1.63 / std::sqrt(static_cast<double>(n));
}

void write_volume_csv(std::ostream& out, std::span<const double> volumes) {
  out << "volume\n";
  char buf[32];
  for (double v : volumes) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

}  // namespace pdcell
