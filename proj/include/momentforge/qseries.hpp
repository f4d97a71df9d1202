#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "momentforge/measure.hpp"
#include "momentforge/moment_sequence.hpp"

namespace momentforge {

/// Index meaning n = infinity in qpoch.
inline constexpr std::size_t kInfiniteProduct = std::numeric_limits<std::size_t>::max();

/// Default tail tolerance for truncated q-series measures.
inline constexpr double kSeriesTolerance = 1e-14;

/// 0 < q < 1 and, where an operation needs it, 0 <= b < a < 1.
struct QParams {
  double a = 0.5;
  double b = 0.25;
  double q = 0.5;
};

struct QPochValue {
  double value = 1.0;
  /// Bound on |log(true) - log(value)| from the truncated factors.
  double log_error = 0.0;
  std::size_t factors = 0;
};

/// (z;q)_n = prod_{k<n} (1 - z q^k); n = kInfiniteProduct truncates once |z| q^k < tol (1 - q).
QPochValue qpoch_eval(double z, double q, std::size_t n, double tol = 1e-17);
double qpoch(double z, double q, std::size_t n, double tol = 1e-17);

/// log (w;q)_inf for complex w with |w| < 1, summing principal logs of the factors.
std::complex<double> log_qpoch_infinite(std::complex<double> w, double q, double tol = 1e-17);

/// mu(a,b;q) = ((a;q)_inf / (b;q)_inf) sum_k ((b/a;q)_k / (q;q)_k) a^k delta_{q^k}.
AtomicMeasure mu_abq(const QParams& p, double tol = kSeriesTolerance);

/// (a;q)_n / (b;q)_n, the moments of mu(a,b;q), raised to the power c.
MomentSequence qbeta_moments(const QParams& p, double c = 1.0);

/// max_{n<=N} |sum_{k<=K} ((b/a;q)_k/(q;q)_k) a^k q^{kn} - (b q^n;q)_inf / (a q^n;q)_inf|.
/// b/a is read as 0 when a = 0.
double qbinomial_check(double a, double b, double q, std::size_t N, std::size_t K);

/// nu_a = sum_{k>=1} a^k / (k (1 - q^k)) delta_{k log(1/q)}, mass -log (a;q)_inf.
AtomicMeasure nu_a(double a, double q, double tol = kSeriesTolerance);

/// tau(a,b;q)_c = ((a;q)_inf/(b;q)_inf)^c sum_j c^j (nu_a - nu_b)^{*j} / j! on the
/// lattice k log(1/q). The lattice is cut where tail mass and tail moments up to
/// order 12 fall below tol (Cauchy majorant of the generating function). Terms
/// j > k_exp of the exponential series are dropped and bounded; by default
/// k_exp covers every retained lattice index, which makes the series exact there.
AtomicMeasure tau_c(const QParams& p, double c, double tol = kSeriesTolerance,
                    std::optional<std::size_t> k_exp = std::nullopt);

/// mu(a,b;q)_c, the image of tau_c under x -> e^{-x}; atoms on {q^k}.
AtomicMeasure mu_c(const QParams& p, double c, double tol = kSeriesTolerance);

/// ((b q^z;q)_inf/(b;q)_inf / ((a q^z;q)_inf/(a;q)_inf))^c for Re z > -log a / log q.
std::complex<double> mellin_qbeta(const QParams& p, double c, std::complex<double> z);

/// Truncated power series sum_{k<=K} c_k z^k, valid for |z| < radius.
struct PowerSeries {
  std::vector<double> coefficients;
  double radius = 1.0;

  double operator()(double z) const;
};

/// Taylor coefficients c_0..c_K of h_p(z;q) = prod_{j>=1} ((1 - p z q^j) / (1 - z q^j))^j.
PowerSeries hp_coefficients(double p, double q, std::size_t K);

/// h_p(x;q) from the product, for 0 <= x < 1.
double hp_value(double p, double q, double x);

/// sigma_{a,b,gamma} = sum_k c_k(b/a, q) a^k delta_{gamma q^k} / sum_{k<=K} c_k a^k.
/// Without K the cut is chosen from the Cauchy bound c_k <= h(r) r^{-k}.
AtomicMeasure sigma_abgamma(const QParams& p, double gamma, std::optional<std::size_t> K = std::nullopt,
                            double tol = kSeriesTolerance);

/// (b;q)_inf / (a;q)_inf, the scale at which sigma_{a,b,gamma} has moments qbinom_moments.
double sigma_default_gamma(const QParams& p);

/// s_n = prod_{k=1}^n (b;q)_k / (a;q)_k.
MomentSequence qbinom_moments(const QParams& p);

}  // namespace momentforge
