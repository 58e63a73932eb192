// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Fixed CoMP cooperation sets over a Delaunay triangulation of base
// stations (BSs) and the probability that a cell serves no user (UE).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "pdcell/geometry.hpp"

namespace pdcell {

struct NetworkScenario {
  double lambda_bs = 1.0;  // BS intensity per unit area
  double lambda_ue = 1.0;  // UE intensity per unit area
  double p_active = 1.0;
  double p_sleep = 0.0;

  /// Throws DomainError on non-positive intensities, negative powers or
  /// p_sleep > p_active.
  void validate() const;
  double ratio() const { return lambda_ue / lambda_bs; }
};

struct CooperationSet {
  enum class Placement { kInterior, kOnEdge };
  std::array<std::size_t, 3> stations;
  Placement placement;
};

/// Cooperation set of a UE in a BS triangulation. Inside a triangle it is
/// that triangle's vertices. Within 1e-9 * edge length of an edge shared by
/// two triangles it is the edge's endpoints plus whichever opposite vertex
/// is nearer to the UE (ties go to the lower vertex index); on a hull edge
/// it is the single adjacent triangle. A UE on a BS takes the
/// lowest-indexed incident triangle.
///
/// Throws OutOfCoverageError when the UE lies outside the convex hull.
CooperationSet cooperation_set(Point2 ue, const Triangulation& tri);

/// Closed form (3 / 2pi) G^{3,2}_{3,3}[16 pi^2 rb^2 / (27 ru^2) | 1/2, 1, 3/2; 1, 5/6, 7/6].
double void_probability_closed_form(const NetworkScenario& s);

/// E[exp(-lambda_ue V)] by adaptive quadrature against the planar cell
/// density at intensity lambda_bs.
double void_probability_laplace(const NetworkScenario& s, double rel_tol = 1e-10);

/// Closed form, reported only after the quadrature agrees with it to 1e-6
/// (absolute); a disagreement throws ConvergenceError carrying both values.
double void_probability_analytic(const NetworkScenario& s);

/// Jensen lower bound exp(-lambda_ue / (2 lambda_bs)).
double void_probability_bound(const NetworkScenario& s);

struct MonteCarloEstimate {
  double estimate;
  double stderr_;
  std::size_t replicates;
  std::size_t cells;  // interior cells pooled over replicates
};

/// Fraction of buffered-interior BS cells containing no UE, averaged over
/// replicates in [0, box_side]^2; the standard error comes from the spread
/// of the per-replicate fractions. Replicate r draws BSs from stream 2r and
/// UEs from stream 2r + 1 of `seed`.
///
/// Throws ConfigurationError when fewer than 1000 interior cells per
/// replicate are expected or replicates < 2.
MonteCarloEstimate void_probability_mc(const NetworkScenario& s, double box_side, int replicates,
                                       std::uint64_t seed);

struct PowerReport {
  double exact;        // (1 - p) P_A + p P_S
  double approximate;  // (1 - p) P_A
};

/// Average BS power for void probability p. Throws DomainError unless
/// 0 <= p <= 1.
PowerReport average_power(const NetworkScenario& s, double p_void);

/// m * n UEs dropped uniformly over n equal cells; fraction of empty cells.
double uniform_cells_void_fraction(int m, int n, std::uint64_t seed);

struct SweepRow {
  double ratio;
  double p_analytic;
  double p_bound;
  double p_mc;
  double p_mc_stderr;
  double avg_power;
};

/// CSV with header `ratio,p_analytic,p_bound,p_mc,p_mc_stderr,avg_power`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace pdcell
