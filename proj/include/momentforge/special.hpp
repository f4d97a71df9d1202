#pragma once

#include <complex>
#include <cstddef>

namespace momentforge {

/// Analytic branch of log Gamma on Re z > 0 (Lanczos, g = 7, nine terms),
/// continuous in z, so exp(c * log_gamma(z)) is the holomorphic power Gamma(z)^c.
/// Throws DomainError for Re z <= 0.
std::complex<double> log_gamma(std::complex<double> z);

/// log Gamma for real x > 0.
double log_gamma(double x);

/// log of the rising factorial (a)_n = a(a+1)...(a+n-1), a > 0.
double log_pochhammer(double a, std::size_t n);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// exp(w) - 1 without cancellation for small |w|.
std::complex<double> expm1(std::complex<double> w);

}  // namespace momentforge
