// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdcell/errors.hpp"
#include "pdcell/specfun.hpp"

namespace pdcell {
namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double x, double y) {
  return std::fabs(x - y) <= 1e-12 * std::max(1.0, std::fabs(x));
}

// log of prod Gamma(b_j+s) prod Gamma(1-a_i-s) / (prod Gamma(1-b_j-s) prod Gamma(a_i+s)).
cplx log_kernel(const MeijerGSpec& g, cplx s) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < g.q(); ++j) {
    if (j < g.m) {
      acc += log_gamma_complex(g.b[j] + s);
    } else {
      acc -= log_gamma_complex(1.0 - g.b[j] - s);
    }
  }
  for (std::size_t i = 0; i < g.p(); ++i) {
    if (i < g.n) {
      acc += log_gamma_complex(1.0 - g.a[i] - s);
    } else {
      acc -= log_gamma_complex(g.a[i] + s);
    }
  }
  return acc;
}

// Real log-magnitude of the integrand on the real axis; the abscissa
// minimising it is the saddle of the vertical integrand.
double log_magnitude_on_axis(const MeijerGSpec& g, double c, double log_x) {
  double acc = -c * log_x;
  for (std::size_t j = 0; j < g.q(); ++j) {
    acc += j < g.m ? std::lgamma(g.b[j] + c) : -std::lgamma(1.0 - g.b[j] - c);
  }
  for (std::size_t i = 0; i < g.p(); ++i) {
    acc += i < g.n ? std::lgamma(1.0 - g.a[i] - c) : -std::lgamma(g.a[i] + c);
  }
  return acc;
}

double choose_abscissa(const MeijerGSpec& g, double log_x, double lo, double hi) {
  double margin = 0.25;
  if (std::isfinite(hi)) {
    margin = std::min(margin, 0.25 * (hi - lo));
  }
  double left = lo + margin;
  double right;
  if (std::isfinite(hi)) {
    right = hi - margin;
  } else {
    // log|integrand| grows like (q-p) c log c - c log x far right.
    const double spread = static_cast<double>(g.q() - g.p());
    right = left + 2.0 * std::exp(log_x / std::max(spread, 1.0)) + 20.0;
  }
  if (right <= left) {
    return 0.5 * (lo + hi);
  }
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = log_magnitude_on_axis(g, x1, log_x);
  double f2 = log_magnitude_on_axis(g, x2, log_x);
  for (int it = 0; it < 80 && right - left > 1e-6; ++it) {
    if (f1 < f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = log_magnitude_on_axis(g, x1, log_x);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = log_magnitude_on_axis(g, x2, log_x);
    }
  }
  return 0.5 * (left + right);
}

// Trapezoid sums on t >= 0 for the conjugate-symmetric integrand
// F(c + it) x^{-(c+it)}; G = (h / pi) * (F(c)/2 + sum_{k>=1} Re F(c + ikh)).
class VerticalTrapezoid {
 public:
  VerticalTrapezoid(const MeijerGSpec& g, double c, double log_x)
      : g_(g), c_(c), log_x_(log_x) {
    const cplx f0 = value(0.0);
    centre_ = f0.real();
    peak_ = std::abs(f0);
  }

  // Extends the node set (spacing h_) out to at most `limit`, stopping
  // early once the integrand has decayed below the tail threshold. Returns
  // true when the tail was reached inside the limit.
  bool extend(double limit) {
    while (true) {
      const double t = (nodes_ + 1) * h_;
      if (t > limit) {
        return false;
      }
      const cplx f = value(t);
      ++nodes_;
      sum_ += f.real();
      abs_sum_ += std::abs(f);
      peak_ = std::max(peak_, std::abs(f));
      quiet_ = std::abs(f) < kTail * peak_ ? quiet_ + 1 : 0;
      if (quiet_ >= kQuietNodes) {
        return true;
      }
    }
  }

  // Halves the step, adding the midpoints of the current node span.
  void refine() {
    h_ *= 0.5;
    const long fine = 2 * nodes_;
    double added = 0.0;
    double added_abs = 0.0;
    for (long k = 1; k < fine; k += 2) {
      const cplx f = value(k * h_);
      added += f.real();
      added_abs += std::abs(f);
      peak_ = std::max(peak_, std::abs(f));
    }
    sum_ += added;
    abs_sum_ += added_abs;
    nodes_ = fine;
  }

  void set_step(double h) { h_ = h; }
  double step() const { return h_; }

  double estimate() const {
    return h_ * (0.5 * centre_ + sum_) / std::numbers::pi;
  }

  // Floor below which successive estimates cannot be distinguished.
  double roundoff() const {
    return 64.0 * std::numeric_limits<double>::epsilon() * h_ *
           (0.5 * std::fabs(centre_) + abs_sum_) / std::numbers::pi;
  }

 private:
  static constexpr double kTail = 1e-18;
  static constexpr int kQuietNodes = 8;

  cplx value(double t) const {
    const cplx s{c_, t};
    return std::exp(log_kernel(g_, s) - s * log_x_);
  }

  const MeijerGSpec& g_;
  double c_;
  double log_x_;
  double h_ = 0.05;
  long nodes_ = 0;
  double centre_ = 0.0;
  double sum_ = 0.0;
  double abs_sum_ = 0.0;
  double peak_ = 0.0;
  int quiet_ = 0;
};

}  // namespace

void MeijerGSpec::validate() const {
  if (m > q() || n > p()) {
    throw DomainError("MeijerGSpec: require m <= q and n <= p");
  }
  if (m + n == 0) {
    throw DomainError("MeijerGSpec: m + n must be positive");
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw DomainError("MeijerGSpec: non-finite parameter");
  }
  for (double v : b) {
    if (!std::isfinite(v)) throw DomainError("MeijerGSpec: non-finite parameter");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double diff = a[i] - b[j];
      if (diff > 0.5 && nearly_equal(diff, std::round(diff))) {
        throw DomainError("MeijerGSpec: poles of Gamma(b_j + s) and Gamma(1 - a_i - s) coincide");
      }
    }
  }
  // Decay rate of the integrand on a vertical line is pi * (m + n - (p + q) / 2).
  const double decay = static_cast<double>(m + n) - 0.5 * static_cast<double>(p() + q());
  if (!(decay > 0.0)) {
    throw DomainError("MeijerGSpec: vertical contour integral does not converge (m + n <= (p + q) / 2)");
  }
  const auto [lo, hi] = contour_strip();
  if (!(lo < hi)) {
    throw DomainError("MeijerGSpec: no vertical line separates the two pole families");
  }
}

std::pair<double, double> MeijerGSpec::contour_strip() const {
  double lo = -kInf;
  for (std::size_t j = 0; j < m; ++j) lo = std::max(lo, -b[j]);
  double hi = kInf;
  for (std::size_t i = 0; i < n; ++i) hi = std::min(hi, 1.0 - a[i]);
  return {lo, hi};
}

double MeijerGSpec::small_argument_exponent() const {
  if (m == 0) {
    throw DomainError("MeijerGSpec: small-argument exponent needs m >= 1");
  }
  return *std::min_element(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m));
}

MeijerGSpec reduce_order(const MeijerGSpec& spec) {
  MeijerGSpec out = spec;
  bool changed = true;
  while (changed) {
    changed = false;
    // Gamma(a_i + s) below against Gamma(b_j + s) above.
    for (std::size_t i = out.n; i < out.p() && !changed; ++i) {
      for (std::size_t j = 0; j < out.m && !changed; ++j) {
        if (nearly_equal(out.a[i], out.b[j])) {
          out.a.erase(out.a.begin() + static_cast<std::ptrdiff_t>(i));
          out.b.erase(out.b.begin() + static_cast<std::ptrdiff_t>(j));
          --out.m;
          changed = true;
        }
      }
    }
    // Gamma(1 - a_i - s) above against Gamma(1 - b_j - s) below.
    for (std::size_t i = 0; i < out.n && !changed; ++i) {
      for (std::size_t j = out.m; j < out.q() && !changed; ++j) {
        if (nearly_equal(out.a[i], out.b[j])) {
          out.a.erase(out.a.begin() + static_cast<std::ptrdiff_t>(i));
          out.b.erase(out.b.begin() + static_cast<std::ptrdiff_t>(j));
          --out.n;
          changed = true;
        }
      }
    }
  }
  return out;
}

double meijer_g(const MeijerGSpec& spec, double x, const ContourPolicy& policy) {
  spec.validate();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("meijer_g: argument must be positive and finite");
  }
  if (!(policy.half_length > 0.0) || !(policy.step > 0.0) || !(policy.refine_tolerance > 0.0)) {
    throw DomainError("meijer_g: contour policy needs positive half-length, step and tolerance");
  }
  const double log_x = std::log(x);
  const auto [lo, hi] = spec.contour_strip();
  double c;
  if (policy.abscissa) {
    c = *policy.abscissa;
    if (!(c > lo && c < hi)) {
      std::ostringstream msg;
      msg << "meijer_g: abscissa " << c << " outside admissible strip (" << lo << ", " << hi << ")";
      throw DomainError(msg.str());
    }
  } else {
    c = choose_abscissa(spec, log_x, lo, hi);
  }

  // The trapezoid error decays like exp(-2 pi delta / h), delta being the
  // distance from the line to the nearest pole.
  const double delta = std::min(c - lo, hi - c);
  VerticalTrapezoid trap(spec, c, log_x);
  trap.set_step(std::min(policy.step, delta / 6.0));

  double limit = policy.half_length;
  bool tail_done = trap.extend(limit);
  double previous = trap.estimate();
  for (int round = 0; round < policy.max_doublings; ++round) {
    if (!tail_done) {
      limit *= 2.0;
      tail_done = trap.extend(limit);
    }
    trap.refine();
    if (!tail_done) {
      tail_done = trap.extend(limit);
    }
    const double current = trap.estimate();
    const double diff = std::fabs(current - previous);
    if (tail_done && diff <= policy.refine_tolerance * std::fabs(current) + trap.roundoff()) {
      return current;
    }
    previous = current;
  }
  std::ostringstream msg;
  msg << "meijer_g: no convergence after " << policy.max_doublings << " refinements at x = " << x;
  throw ConvergenceError(msg.str(), previous, trap.estimate());
}

}  // namespace pdcell
