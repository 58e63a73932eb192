// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Volume law of the typical Poisson-Delaunay cell in R^d, written as a
// Meijer G-function density and distribution function, together with its
// raw moments, shape statistics and the classical special-case forms used
// to cross-check it.

#pragma once

#include <functional>

#include "pdcell/specfun.hpp"

namespace pdcell {

/// Behaviour of the density as x -> 0+. The density behaves like
/// x^(2 * alpha - 1) with alpha = min_{j<=m} b_j of the density block.
struct SmallArgumentLimit {
  enum class Kind { kConstant, kZero, kInfinite };
  Kind kind;
  double value;     // the limit for kConstant, 0 for kZero, +inf otherwise
  double exponent;  // alpha
};

struct ShapeStats {
  double mean;
  double variance;
  double skewness;
  /// Excess kurtosis (fourth standardised central moment minus 3); 6 for
  /// the exponential law.
  double kurtosis;
};

/// Closed-form prefactor and scale of the density for dimension d.
struct CellConstants {
  double a;
  double b;
};

/// Prefactor A and scale B computed from their Gamma-product formulas.
CellConstants cell_constants(int d);

/// The tabulated closed forms of A and B (2/sqrt(pi), 1/4, ...) for d <= 5.
CellConstants published_cell_constants(int d);

/// Typical-cell volume law in dimension d for a Poisson process of
/// intensity rho. Immutable once built.
class CellDistribution {
 public:
  /// Throws DomainError for d < 1 or rho <= 0. For d <= 5 the constants are
  /// checked against their published closed forms; a disagreement beyond
  /// 1e-10 relative throws std::logic_error naming both values.
  static CellDistribution build(int d, double rho);

  int dimension() const { return d_; }
  double intensity() const { return rho_; }
  double prefactor() const { return a_; }
  double scale() const { return b_; }
  const MeijerGSpec& pdf_spec() const { return pdf_spec_; }
  const MeijerGSpec& cdf_spec() const { return cdf_spec_; }

  /// k-th raw moment from the Gamma-product moment formula.
  double moment(int k) const;
  double mean() const { return moment(1); }

  /// rho * f(rho x), f(y) = (A / y) G^{2d,0}_{2d-2,2d}[B y^2 | ...].
  double pdf(double x, const ContourPolicy& policy = {}) const;

  /// F(rho x), F(y) = (A / 2) G^{2d,1}_{2d-1,2d+1}[B y^2 | 1, ...; ..., 0].
  double cdf(double x, const ContourPolicy& policy = {}) const;

  SmallArgumentLimit small_x_limit() const;

  /// E[g(V)] = int_0^inf g(x) pdf(x) dx. Below x0 = 1e-4 * mean the density
  /// is replaced by its power-law asymptote fitted at x0; above, adaptive
  /// Gauss-Kronrod runs out to where g * pdf has decayed below 1e-16 of its
  /// peak. Throws ConvergenceError if the tolerance is not met.
  double expectation(const std::function<double(double)>& g, double rel_tol = 1e-10) const;

 private:
  CellDistribution() = default;

  int d_ = 0;
  double rho_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  MeijerGSpec pdf_spec_;
  MeijerGSpec cdf_spec_;
};

/// k-th raw moment of the volume (k >= 1), directly from the Gamma-product
/// formula; scales as rho^{-k}.
double cell_moment(int d, double rho, int k);

/// Mean, variance, skewness and excess kurtosis at unit intensity, from the
/// first four raw moments.
ShapeStats shape_stats(int d);

/// Central-moment assembly from raw moments m1..m4.
ShapeStats shape_from_raw_moments(double m1, double m2, double m3, double m4);

/// Classical closed forms at unit intensity: exp(-x) for d = 1 and
/// (8/9) pi x K_{1/6}^2(2 pi x / (3 sqrt 3)) for d = 2. Throws
/// UnsupportedError for other d and DomainError for x <= 0.
double pdf_closed_form(int d, double x);

/// Angular triple-integral density for d = 3, rho = 1, evaluated with
/// iterated adaptive Gauss-Kronrod rules to the given relative tolerance.
/// Throws ConvergenceError when any level fails to converge.
double muche_pdf_oracle(double x, double quad_tolerance = 1e-3);

}  // namespace pdcell
