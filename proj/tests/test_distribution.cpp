// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pdcell/distribution.hpp"
#include "pdcell/errors.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace pdcell;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("density prefactor and scale match their closed forms") {
  const double sqrt_pi = std::sqrt(kPi);
  CHECK(rel(cell_constants(1).a, 2.0 / sqrt_pi) < 1e-13);
  CHECK(rel(cell_constants(1).b, 0.25) < 1e-13);
  CHECK(rel(cell_constants(2).a, 3.0 / sqrt_pi) < 1e-13);
  CHECK(rel(cell_constants(2).b, 4.0 * kPi * kPi / 27.0) < 1e-13);
  CHECK(rel(cell_constants(3).a, 560.0 * std::sqrt(2.0) / (81.0 * kPi)) < 1e-13);
  CHECK(rel(cell_constants(3).b, 27.0 * kPi * kPi / 16.0) < 1e-13);
  for (int d = 1; d <= 5; ++d) {
    CAPTURE(d);
    CHECK(rel(cell_constants(d).a, published_cell_constants(d).a) < 1e-10);
    CHECK(rel(cell_constants(d).b, published_cell_constants(d).b) < 1e-10);
  }
  CHECK_THROWS_AS(cell_constants(0), DomainError);
}

TEST_CASE("parameter blocks have the documented shape") {
  for (int d = 1; d <= 6; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    const MeijerGSpec& g = law.pdf_spec();
    CAPTURE(d);
    CHECK(g.m == static_cast<std::size_t>(2 * d));
    CHECK(g.n == 0);
    CHECK(g.p() == static_cast<std::size_t>(2 * d - 2));
    CHECK(g.q() == static_cast<std::size_t>(2 * d));
    const MeijerGSpec& c = law.cdf_spec();
    CHECK(c.n == 1);
    CHECK(c.m == g.m);
    CHECK(c.a.front() == 1.0);
    CHECK(c.b.back() == 0.0);
  }
  const MeijerGSpec g3 = CellDistribution::build(3, 1.0).pdf_spec();
  const std::vector<double> upper = {11.0 / 6.0, 13.0 / 6.0, 2.0, 2.0};
  const std::vector<double> lower = {1.0, 1.5, 10.0 / 8.0, 12.0 / 8.0, 14.0 / 8.0, 16.0 / 8.0};
  REQUIRE(g3.a.size() == upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) CHECK(g3.a[i] == doctest::Approx(upper[i]).epsilon(1e-15));
  REQUIRE(g3.b.size() == lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) CHECK(g3.b[i] == doctest::Approx(lower[i]).epsilon(1e-15));
}

TEST_CASE("build rejects bad arguments") {
  CHECK_THROWS_AS(CellDistribution::build(0, 1.0), DomainError);
  CHECK_THROWS_AS(CellDistribution::build(2, 0.0), DomainError);
  CHECK_THROWS_AS(CellDistribution::build(2, -1.0), DomainError);
}

TEST_CASE("raw moments") {
  CHECK(cell_moment(1, 1.0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cell_moment(1, 1.0, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cell_moment(1, 1.0, 4) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(cell_moment(2, 1.0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cell_moment(3, 1.0, 1) == doctest::Approx(0.14776).epsilon(1e-5));
  for (double lambda : {0.3, 1.0, 7.0}) CHECK(cell_moment(2, lambda, 1) == doctest::Approx(0.5 / lambda).epsilon(1e-14));
  CHECK_THROWS_AS(cell_moment(2, 1.0, 0), DomainError);
}

TEST_CASE("moments scale with inverse powers of the intensity") {
  for (int d = 1; d <= 5; ++d) {
    for (int k = 1; k <= 4; ++k) {
      for (double rho : {0.5, 4.0, 13.0}) {
        CAPTURE(d);
        CAPTURE(k);
        CHECK(rel(cell_moment(d, rho, k), std::pow(rho, -k) * cell_moment(d, 1.0, k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("shape statistics") {
  const ShapeStats s1 = shape_stats(1);
  CHECK(s1.mean == doctest::Approx(1.0));
  CHECK(s1.variance == doctest::Approx(1.0));
  CHECK(s1.skewness == doctest::Approx(2.0));
  CHECK(s1.kurtosis == doctest::Approx(6.0));
  const ShapeStats s2 = shape_stats(2);
  CHECK(s2.variance == doctest::Approx(0.19328).epsilon(1e-5));
  CHECK(s2.skewness == doctest::Approx(1.82424).epsilon(1e-5));
  CHECK(s2.kurtosis == doctest::Approx(5.05614).epsilon(1e-5));
  const ShapeStats s4 = shape_stats(4);
  CHECK(s4.mean == doctest::Approx(0.0314685).epsilon(1e-6));
  CHECK(s4.variance == doctest::Approx(0.000694902).epsilon(1e-6));
  CHECK(s4.skewness == doctest::Approx(1.86166).epsilon(1e-5));
  CHECK(s4.kurtosis == doctest::Approx(5.46232).epsilon(1e-5));
  for (int d = 1; d <= 5; ++d) {
    const ShapeStats s = shape_stats(d);
    CAPTURE(d);
    CHECK(s.variance > 0.0);
    CHECK(s.skewness > 1.0);
    CHECK(s.kurtosis > 0.0);                             // leptokurtic
    CHECK(s.kurtosis + 3.0 >= s.skewness * s.skewness + 1.0);  // Pearson's inequality
  }
}

TEST_CASE("pdf and cdf against high-precision references") {
  for (const auto& ref : testing::kPdfReference) {
    const CellDistribution law = CellDistribution::build(ref.d, 1.0);
    CAPTURE(ref.d);
    CAPTURE(ref.x);
    CHECK(rel(law.pdf(ref.x), ref.value) < 1e-9);
  }
  for (const auto& ref : testing::kCdfReference) {
    const CellDistribution law = CellDistribution::build(ref.d, 1.0);
    CAPTURE(ref.d);
    CAPTURE(ref.x);
    CHECK(rel(law.cdf(ref.x), ref.value) < 1e-9);
  }
}

TEST_CASE("unit-dimension law is exponential") {
  const CellDistribution law = CellDistribution::build(1, 1.0);
  CHECK(law.pdf(0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(law.cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
  for (double x = 1e-3; x <= 10.0; x *= 1.2) {
    CAPTURE(x);
    CHECK(rel(law.pdf(x), std::exp(-x)) < 1e-8);
    CHECK(rel(law.cdf(x), -std::expm1(-x)) < 1e-8);
  }
}

TEST_CASE("planar law matches the squared Bessel form") {
  const CellDistribution law = CellDistribution::build(2, 1.0);
  for (double x : {0.1, 0.5, 1.0}) {
    const double k = bessel_k(1.0 / 6.0, 2.0 * kPi * x / (3.0 * std::sqrt(3.0)));
    CHECK(rel(law.pdf(x), 8.0 / 9.0 * kPi * x * k * k) < 1e-8);
    CHECK(rel(law.pdf(x), pdf_closed_form(2, x)) < 1e-8);
  }
  CHECK(pdf_closed_form(1, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(pdf_closed_form(2, 1e-12) < 1e-3);
  CHECK(pdf_closed_form(2, 1e-12) < pdf_closed_form(2, 1e-9));
  CHECK_THROWS_AS(pdf_closed_form(3, 0.5), UnsupportedError);
  CHECK_THROWS_AS(pdf_closed_form(2, 0.0), DomainError);
}

TEST_CASE("intensity scaling of pdf and cdf") {
  for (int d = 1; d <= 5; ++d) {
    const CellDistribution unit = CellDistribution::build(d, 1.0);
    const CellDistribution dense = CellDistribution::build(d, 4.0);
    const double x = 0.5 * unit.mean();
    CAPTURE(d);
    CHECK(rel(dense.pdf(x / 4.0), 4.0 * unit.pdf(x)) < 1e-12);
    CHECK(rel(dense.cdf(x / 4.0), unit.cdf(x)) < 1e-12);
  }
}

TEST_CASE("cdf boundary behaviour and monotonicity") {
  for (int d = 1; d <= 5; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    CAPTURE(d);
    CHECK(law.cdf(0.0) == 0.0);
    CHECK(law.cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(law.cdf(30.0 * law.mean()) == doctest::Approx(1.0).epsilon(1e-9));
    double last = 0.0;
    for (double x = 1e-4 * law.mean(); x < 20.0 * law.mean(); x *= 1.3) {
      const double now = law.cdf(x);
      CHECK(now >= last);
      last = now;
    }
    CHECK_THROWS_AS(law.cdf(-1.0), DomainError);
    CHECK_THROWS_AS(law.pdf(0.0), DomainError);
  }
}

TEST_CASE("cdf equals the integral of the pdf") {
  const CellDistribution planar = CellDistribution::build(2, 1.0);
  CHECK(std::fabs(planar.cdf(0.5) - testing::integral_of_pdf(planar, 0.5)) < 1e-6);
  for (int d = 1; d <= 3; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double x = law.mean() * std::pow(10.0, -2.0 + 3.0 * i / 19.0);
      CAPTURE(d);
      CAPTURE(x);
      CHECK(std::fabs(law.cdf(x) - testing::integral_of_pdf(law, x)) < 1e-6);
    }
  }
}

TEST_CASE("normalisation and quadrature moments at unit intensity") {
  for (int d = 1; d <= 3; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    CAPTURE(d);
    CHECK(std::fabs(law.expectation([](double) { return 1.0; }) - 1.0) < 1e-6);
    for (int k = 1; k <= 4; ++k) {
      const double m = law.expectation([k](double x) { return std::pow(x, k); });
      CHECK(rel(m, law.moment(k)) < 1e-5);
    }
  }
}

TEST_CASE("small-volume behaviour") {
  const SmallArgumentLimit l1 = CellDistribution::build(1, 1.0).small_x_limit();
  CHECK(l1.kind == SmallArgumentLimit::Kind::kConstant);
  CHECK(l1.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l1.exponent == 0.5);
  const SmallArgumentLimit l2 = CellDistribution::build(2, 1.0).small_x_limit();
  CHECK(l2.kind == SmallArgumentLimit::Kind::kZero);
  CHECK(l2.exponent == doctest::Approx(5.0 / 6.0));
  for (int d = 3; d <= 5; ++d) {
    const SmallArgumentLimit l = CellDistribution::build(d, 1.0).small_x_limit();
    CHECK(l.kind == SmallArgumentLimit::Kind::kZero);
    CHECK(l.exponent == 1.0);
  }
  CHECK(std::fabs(CellDistribution::build(1, 1.0).pdf(1e-8) - 1.0) < 1e-6);
  // The density vanishes like x^(2 alpha - 1) for d >= 2.
  for (int d = 2; d <= 5; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    const double power = 2.0 * law.small_x_limit().exponent - 1.0;
    CAPTURE(d);
    CHECK(law.pdf(1e-10) < law.pdf(1e-8));
    CHECK(std::log(law.pdf(1e-8) / law.pdf(1e-10)) / std::log(100.0) == doctest::Approx(power).epsilon(0.02));
  }
}

TEST_CASE("density is unimodal on a fine logarithmic grid") {
  for (int d = 1; d <= 5; ++d) {
    const CellDistribution law = CellDistribution::build(d, 1.0);
    std::vector<double> xs;
    std::vector<double> values;
    const double lo = 1e-5 * law.mean();
    const double hi = 10.0 * law.mean();
    for (int i = 0; i < 2000; ++i) {
      xs.push_back(lo * std::pow(hi / lo, i / 1999.0));
      values.push_back(law.pdf(xs.back()));
    }
    CAPTURE(d);
    CHECK(testing::count_local_maxima(values) == 1);
    if (d == 1) CHECK(values[0] > values[1]);
  }
}

TEST_CASE("three-dimensional density against the angular triple integral") {
  const CellDistribution law = CellDistribution::build(3, 1.0);
  CHECK(rel(muche_pdf_oracle(1e-6, 1e-6), 6.84884e-4) < 1e-4);
  for (double x : {0.01, 0.2, 0.6}) {
    const double oracle = muche_pdf_oracle(x);
    CAPTURE(x);
    CHECK(oracle > 0.0);
    CHECK(rel(oracle, law.pdf(x)) < 1e-3);
  }
  CHECK_THROWS_AS(muche_pdf_oracle(0.0), DomainError);
}
