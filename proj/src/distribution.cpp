// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdcell/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pdcell/errors.hpp"
#include "pdcell/quadrature.hpp"

namespace pdcell {
namespace {

constexpr double kPi = std::numbers::pi;

double log_prefactor(int d) {
  const double dd = d;
  double v = (dd - 0.5) * std::log(2.0) + 0.5 * dd * dd * std::log(dd + 1.0) +
             std::lgamma(0.5 * dd * dd) + dd * std::lgamma(0.5 * (dd + 1.0)) - std::log(kPi) -
             0.5 * (dd * dd - 1.0) * std::log(dd) - std::lgamma(dd) - std::lgamma(0.5 * (dd * dd + 1.0));
  for (int i = 2; i <= d; ++i) v -= std::lgamma(0.5 * i);
  return v;
}

double log_scale(int d) {
  const double dd = d;
  const double inner = (dd - 1.0) * std::log(2.0) + 0.5 * (dd - 1.0) * std::log(kPi) +
                       0.5 * dd * std::log(dd) + std::lgamma(0.5 * (dd + 1.0)) -
                       0.5 * (dd + 1.0) * std::log(dd + 1.0);
  return 2.0 * inner;
}

MeijerGSpec density_block(int d) {
  const double dd = d;
  MeijerGSpec g;
  g.m = static_cast<std::size_t>(2 * d);
  g.n = 0;
  for (int i = 1; i <= d - 1; ++i) g.a.push_back(0.5 * dd + i / dd);
  for (int i = 1; i <= d - 1; ++i) g.a.push_back(0.5 * (dd + 1.0));
  for (int i = 2; i <= d; ++i) g.b.push_back(0.5 * i);
  for (int i = 0; i <= d; ++i) g.b.push_back((dd * dd + 1.0 + 2.0 * i) / (2.0 * (dd + 1.0)));
  return g;
}

MeijerGSpec distribution_block(const MeijerGSpec& density) {
  MeijerGSpec g = density;
  g.n = 1;
  g.a.insert(g.a.begin(), 1.0);
  g.b.push_back(0.0);
  return g;
}

void check_against_published(int d, const CellConstants& computed) {
  if (d > 5) return;
  const CellConstants table = published_cell_constants(d);
  auto off = [](double x, double ref) { return std::fabs(x - ref) > 1e-10 * std::fabs(ref); };
  if (off(computed.a, table.a) || off(computed.b, table.b)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cell constants for d = " << d << " disagree with published values: A = " << computed.a
        << " vs " << table.a << ", B = " << computed.b << " vs " << table.b;
    throw std::logic_error(msg.str());
  }
}

}  // namespace

CellConstants cell_constants(int d) {
  if (d < 1) throw DomainError("cell_constants: dimension must be >= 1");
  return {std::exp(log_prefactor(d)), std::exp(log_scale(d))};
}

CellConstants published_cell_constants(int d) {
  const double sqrt_pi = std::sqrt(kPi);
  const double pi2 = kPi * kPi;
  switch (d) {
    case 1: return {2.0 / sqrt_pi, 0.25};
    case 2: return {3.0 / sqrt_pi, 4.0 * pi2 / 27.0};
    case 3: return {560.0 * std::sqrt(2.0) / (81.0 * kPi), 27.0 * pi2 / 16.0};
    case 4: return {234375.0 / (18304.0 * std::sqrt(2.0)), 9216.0 * pi2 * pi2 / 3125.0};
    case 5:
      return {39919426911.0 * std::sqrt(3.0) / (244140625.0 * kPi * sqrt_pi),
              50000.0 * pi2 * pi2 / 729.0};
    default: throw UnsupportedError("published_cell_constants: tabulated for d = 1..5 only");
  }
}

CellDistribution CellDistribution::build(int d, double rho) {
  if (d < 1) throw DomainError("CellDistribution: dimension must be >= 1");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("CellDistribution: intensity must be positive");
  CellDistribution out;
  out.d_ = d;
  out.rho_ = rho;
  const CellConstants k = cell_constants(d);
  check_against_published(d, k);
  out.a_ = k.a;
  out.b_ = k.b;
  out.pdf_spec_ = density_block(d);
  out.cdf_spec_ = distribution_block(out.pdf_spec_);
  out.pdf_spec_.validate();
  out.cdf_spec_.validate();
  return out;
}

double cell_moment(int d, double rho, int k) {
  if (d < 1) throw DomainError("cell_moment: dimension must be >= 1");
  if (!(rho > 0.0)) throw DomainError("cell_moment: intensity must be positive");
  if (k < 1) throw DomainError("cell_moment: order must be a positive integer");
  const double dd = d;
  const double kk = k;
  double v = std::lgamma(dd + kk) + std::lgamma(0.5 * dd * dd) +
             std::lgamma(0.5 * (dd * dd + dd * kk + kk + 1.0)) +
             (dd - kk + 1.0) * std::lgamma(0.5 * (dd + 1.0));
  v -= kk * (dd * std::log(2.0) + 0.5 * (dd - 1.0) * std::log(kPi) + std::log(rho));
  v -= std::lgamma(dd) + std::lgamma(0.5 * (dd * dd + 1.0)) + std::lgamma(0.5 * (dd * dd + dd * kk)) +
       (dd + 1.0) * std::lgamma(0.5 * (dd + kk + 1.0));
  for (int i = 2; i <= d + 1; ++i) v += std::lgamma(0.5 * (kk + i)) - std::lgamma(0.5 * i);
  return std::exp(v);
}

double CellDistribution::moment(int k) const { return cell_moment(d_, rho_, k); }

double CellDistribution::pdf(double x, const ContourPolicy& policy) const {
  if (!(x > 0.0)) throw DomainError("pdf: volume must be positive (x = 0 is singular)");
  if (std::isinf(x)) return 0.0;
  const double y = rho_ * x;
  return rho_ * (a_ / y) * meijer_g(pdf_spec_, b_ * y * y, policy);
}

double CellDistribution::cdf(double x, const ContourPolicy& policy) const {
  if (!(x >= 0.0)) throw DomainError("cdf: volume must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double y = rho_ * x;
  const double v = 0.5 * a_ * meijer_g(cdf_spec_, b_ * y * y, policy);
  return std::clamp(v, 0.0, 1.0);
}

SmallArgumentLimit CellDistribution::small_x_limit() const {
  const double alpha = pdf_spec_.small_argument_exponent();
  const double power = 2.0 * alpha - 1.0;
  if (power > 1e-12) return {SmallArgumentLimit::Kind::kZero, 0.0, alpha};
  if (power < -1e-12) {
    return {SmallArgumentLimit::Kind::kInfinite, std::numeric_limits<double>::infinity(), alpha};
  }
  // Leading residue of the Mellin-Barnes integrand at s = -alpha.
  double log_residue = 0.0;
  bool skipped = false;
  for (std::size_t j = 0; j < pdf_spec_.m; ++j) {
    if (!skipped && pdf_spec_.b[j] == alpha) {
      skipped = true;
      continue;
    }
    log_residue += std::lgamma(pdf_spec_.b[j] - alpha);
  }
  for (double ai : pdf_spec_.a) log_residue -= std::lgamma(ai - alpha);
  const double value = rho_ * a_ * std::exp(log_residue + alpha * std::log(b_));
  return {SmallArgumentLimit::Kind::kConstant, value, alpha};
}

double CellDistribution::expectation(const std::function<double(double)>& g, double rel_tol) const {
  const double mu = mean();
  const double x0 = 1e-4 * mu;
  const double alpha = pdf_spec_.small_argument_exponent();
  const double power = 2.0 * alpha - 1.0;

  // Power-law model on (0, x0): pdf ~ C x^power.
  const double f0 = pdf(x0);
  const double coeff = f0 / std::pow(x0, power);
  const double head = g(0.5 * x0) * coeff * std::pow(x0, power + 1.0) / (power + 1.0);

  auto weighted = [&](double x) { return g(x) * pdf(x); };

  // Geometric breakpoints through the bulk; the upper limit moves out until
  // the weighted density is negligible against its largest sampled value.
  std::vector<double> breaks;
  for (double t = 1e-3 * mu; t < mu; t *= 4.0) breaks.push_back(t);
  breaks.push_back(mu);
  double peak = 0.0;
  for (double t : breaks) peak = std::max(peak, std::fabs(weighted(t) * t));
  double upper = 2.0 * mu;
  for (int it = 0; it < 400; ++it) {
    const double w = std::fabs(weighted(upper) * upper);
    peak = std::max(peak, w);
    if (w < 1e-16 * peak) break;
    breaks.push_back(upper);
    upper *= 1.5;
  }
  QuadratureResult r = integrate(weighted, x0, upper, rel_tol, 0.0, breaks);
  if (!r.converged) {
    throw ConvergenceError("expectation: adaptive quadrature did not converge", r.value - r.error,
                           r.value);
  }
  return head + r.value;
}

ShapeStats shape_from_raw_moments(double m1, double m2, double m3, double m4) {
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  return {m1, var, c3 / std::pow(var, 1.5), c4 / (var * var) - 3.0};
}

ShapeStats shape_stats(int d) {
  return shape_from_raw_moments(cell_moment(d, 1.0, 1), cell_moment(d, 1.0, 2),
                                cell_moment(d, 1.0, 3), cell_moment(d, 1.0, 4));
}

double pdf_closed_form(int d, double x) {
  if (!(x > 0.0)) throw DomainError("pdf_closed_form: volume must be positive");
  switch (d) {
    case 1: return std::exp(-x);
    case 2: {
      const double k = bessel_k(1.0 / 6.0, 2.0 * kPi * x / (3.0 * std::sqrt(3.0)));
      return 8.0 / 9.0 * kPi * x * k * k;
    }
    default: throw UnsupportedError("pdf_closed_form: closed form known for d = 1, 2 only");
  }
}

}  // namespace pdcell
