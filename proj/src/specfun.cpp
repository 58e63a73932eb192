// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdcell/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "pdcell/errors.hpp"

namespace pdcell {
namespace {

using cplx = std::complex<double>;

// Lanczos approximation, g = 7, n = 9. Relative error of Gamma below 2e-15
// for Re z >= 1/2.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// log sin(pi z) for Im z >= 0, continued analytically from (0, 1):
// sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), and |e^{2 pi i z}| <= 1.
cplx log_sin_pi_upper(cplx z) {
  constexpr double pi = std::numbers::pi;
  const cplx i{0.0, 1.0};
  const cplx w = std::exp(2.0 * pi * i * z);
  return -i * pi * z + std::log(1.0 - w) - std::log(2.0) + i * (pi / 2.0);
}

}  // namespace

std::complex<double> log_gamma_complex(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("log_gamma_complex: pole at non-positive integer");
  }
  // Conjugate symmetry keeps every branch choice in the upper half-plane.
  if (z.imag() < 0.0) {
    return std::conj(log_gamma_complex(std::conj(z)));
  }
  if (z.real() >= 0.5) {
    return lanczos_log_gamma(z);
  }
  const double log_pi = std::log(std::numbers::pi);
  return log_pi - log_sin_pi_upper(z) - lanczos_log_gamma(1.0 - z);
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) {
    throw DomainError("bessel_k: argument must be positive");
  }
  // K_{-nu} = K_nu; the standard library accepts nu >= 0 only.
  return std::cyl_bessel_k(std::fabs(nu), x);
}

}  // namespace pdcell
