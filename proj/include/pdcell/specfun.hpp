// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Special-function kernel: complex log-gamma, modified Bessel K and a
// Mellin-Barnes evaluator for Meijer G-functions with real parameters and
// real positive argument.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace pdcell {

/// Principal branch of log Gamma(z). Imaginary part is continuous along
/// vertical lines that avoid the poles at z = 0, -1, -2, ...
/// Throws DomainError at a pole.
std::complex<double> log_gamma_complex(std::complex<double> z);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
double bessel_k(double nu, double x);

/// Parameter block of G^{m,n}_{p,q}[x | a_1..a_p ; b_1..b_q].
///
/// a[0..n) feed Gamma(1 - a_i - s) in the numerator, a[n..p) feed
/// Gamma(a_i + s) in the denominator; b[0..m) feed Gamma(b_j + s) in the
/// numerator and b[m..q) feed Gamma(1 - b_j - s) in the denominator.
struct MeijerGSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t p() const { return a.size(); }
  std::size_t q() const { return b.size(); }

  /// Checks counts, pole separation and convergence of the vertical
  /// contour. Throws DomainError on violation.
  void validate() const;

  /// Open interval of admissible contour abscissae: right of every pole of
  /// Gamma(b_j + s), j < m, and left of every pole of Gamma(1 - a_i - s),
  /// i < n. The upper end is +inf when n == 0.
  std::pair<double, double> contour_strip() const;

  /// Exponent alpha with G ~ x^alpha as x -> 0+ (n == 0): min_{j<m} b_j.
  double small_argument_exponent() const;

  bool operator==(const MeijerGSpec&) const = default;
};

/// Cancels matching parameter pairs (a_i in the denominator against b_j in
/// the numerator, or a_i in the numerator against b_j in the denominator),
/// lowering p and q by one per pair. The function value is unchanged.
MeijerGSpec reduce_order(const MeijerGSpec& spec);

/// Quadrature controls for the vertical-line trapezoid rule.
struct ContourPolicy {
  /// Real part of the contour. Empty: chosen per argument near the saddle
  /// point of |integrand| inside the admissible strip.
  std::optional<double> abscissa;
  double half_length = 40.0;
  double step = 0.25;
  double refine_tolerance = 1e-10;
  int max_doublings = 6;
};

/// G^{m,n}_{p,q}[x | a; b] for x > 0 by trapezoid quadrature of the
/// Mellin-Barnes integral on Re s = c. Refines by halving the step (and
/// doubling the half-length when the tail is not negligible) until two
/// successive estimates agree to refine_tolerance relative.
///
/// Throws DomainError for an invalid spec, x <= 0 or an abscissa outside the
/// strip; ConvergenceError when max_doublings refinements do not settle.
double meijer_g(const MeijerGSpec& spec, double x, const ContourPolicy& policy = {});

}  // namespace pdcell
