#include "momentforge/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "momentforge/error.hpp"

namespace momentforge {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Valid for Re z >= 0.5.
std::complex<double> lanczos_log_gamma(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("log_gamma: Re z must be positive");
  }
  if (z.real() >= 0.5) {
    return lanczos_log_gamma(z);
  }
  // Gamma(z) = Gamma(z + 1) / z keeps the branch continuous on Re z > 0.
  return lanczos_log_gamma(z + 1.0) - std::log(z);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

double log_pochhammer(double a, std::size_t n) {
  if (n == 0) {
    return 0.0;
  }
  if (n <= 32) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += std::log(a + static_cast<double>(k));
    }
    return acc;
  }
  return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

std::complex<double> expm1(std::complex<double> w) {
  if (std::abs(w) < 1e-3) {
    // Taylor to w^7; the next term is below 1e-25 relative.
    std::complex<double> term = w;
    std::complex<double> sum = w;
    for (int k = 2; k <= 8; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  if (w.imag() == 0.0) {
    return std::expm1(w.real());
  }
  // exp(x+iy) - 1 = expm1(x) cos y - 2 sin^2(y/2) + i exp(x) sin y
  const double x = w.real();
  const double y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace momentforge
