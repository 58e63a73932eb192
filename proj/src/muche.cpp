// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Angular triple integral for the d = 3 volume density:
//
//   f(x) = (35 x / 2) int_0^{2pi} int_0^{2pi - t1} int_0^{pi}
//            sin t3 exp(-2 pi x g(t1, t2) / ((1 + cos t3) sin^2 t3)) dt3 dt2 dt1,
//   g(t1, t2) = 1 / (sin(t1/2) sin(t2/2) sin((t1 + t2)/2)).
//
// With u = cos t3 the innermost integral becomes
//   int_{-1}^{1} exp(-K / ((1 + u)^2 (1 - u))) du,  K = 2 pi x g,
// which removes the sin t3 weight. Each angular boundary is inset by 1e-8.

#include <cmath>
#include <numbers>

#include "pdcell/distribution.hpp"
#include "pdcell/errors.hpp"
#include "pdcell/quadrature.hpp"

namespace pdcell {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInset = 1e-8;

void require(const QuadratureResult& r, const char* level) {
  if (!r.converged) {
    throw ConvergenceError(std::string("muche_pdf_oracle: ") + level + " integral did not converge",
                           r.value - r.error, r.value);
  }
}

double polar_integral(double k, double tol) {
  auto integrand = [k](double u) {
    const double denom = (1.0 + u) * (1.0 + u) * (1.0 - u);
    return std::exp(-k / denom);
  };
  // Boundary layers sit at u = -1 (width ~ sqrt(K)) and u = 1 (width ~ K).
  QuadratureResult r = integrate(integrand, -1.0 + kInset, 1.0 - kInset, tol, 0.0, {0.0});
  require(r, "polar");
  return r.value;
}

}  // namespace

double muche_pdf_oracle(double x, double quad_tolerance) {
  if (!(x > 0.0)) throw DomainError("muche_pdf_oracle: volume must be positive");
  if (!(quad_tolerance > 0.0)) throw DomainError("muche_pdf_oracle: tolerance must be positive");
  const double inner_tol = 0.1 * quad_tolerance;
  const double middle_tol = 0.3 * quad_tolerance;
  const double scale = kTwoPi * x;

  auto over_t2 = [&](double t1) {
    const double s1 = std::sin(0.5 * t1);
    auto integrand = [&](double t2) {
      const double g = 1.0 / (s1 * std::sin(0.5 * t2) * std::sin(0.5 * (t1 + t2)));
      return polar_integral(scale * g, inner_tol);
    };
    const double upper = kTwoPi - t1 - kInset;
    if (upper <= kInset) return 0.0;
    QuadratureResult r = integrate(integrand, kInset, upper, middle_tol);
    require(r, "middle");
    return r.value;
  };
  QuadratureResult r = integrate(over_t2, kInset, kTwoPi - kInset, quad_tolerance);
  require(r, "outer");
  return 17.5 * x * r.value;
}

}  // namespace pdcell
