#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>

#include "momentforge/measure.hpp"
#include "momentforge/moment_sequence.hpp"
#include "momentforge/quadrature.hpp"

namespace momentforge {

/// f(s) = a + b s + int (1 - e^{-sx}) dnu(x) on s >= 0, from a fixed catalog.
///
/// Every entry has a closed form and an analytic derivative. Entries other than
/// the power tower also carry their Levy triple, and construction cross-checks
/// the closed form against the Levy integral and spot-checks monotonicity.
class BernsteinFunction {
 public:
  enum class Kind { Affine, Linear, Ratio, QRatio, PowerTower };

  /// a + s, a >= 0.
  static BernsteinFunction affine(double a);
  /// s.
  static BernsteinFunction linear();
  /// (a + s) / (b + s), 0 <= a < b.
  static BernsteinFunction ratio(double a, double b);
  /// s / (s + 1).
  static BernsteinFunction mobius();
  /// (1 - a q^s) / (1 - b q^s), 0 <= b < a < 1, 0 < q < 1.
  static BernsteinFunction qratio(double a, double b, double q);
  /// s (1 + 1/s)^{s+1}, with value 1 at s = 0. Closed form only.
  static BernsteinFunction power_tower();

  Kind kind() const { return kind_; }
  const std::string& catalog_id() const { return id_; }
  double param(std::size_t i) const { return p_[i]; }

  double operator()(double s) const;
  /// log f(s), evaluated without forming f where that loses accuracy.
  double log_value(double s) const;
  double derivative(double s) const;

  double constant_term() const { return a_; }
  double linear_term() const { return b_; }
  /// The Levy measure nu; empty for the power tower.
  const std::optional<Measure>& levy() const { return levy_; }
  bool has_kappa() const { return kind_ != Kind::PowerTower; }

 private:
  BernsteinFunction(Kind kind, std::string id, double p0, double p1, double p2);
  void self_test() const;

  Kind kind_;
  std::string id_;
  double p_[3];
  double a_ = 0.0;
  double b_ = 0.0;
  std::optional<Measure> levy_;
};

double eval(const BernsteinFunction& f, double s);

/// a + b s + int (1 - e^{-sx}) dnu(x) by quadrature or atom sums.
double eval_via_levy(const BernsteinFunction& f, double s, const QuadConfig& cfg = {});

/// The measure kappa with f'/f = int e^{-sx} dkappa(x). Infinite atomic kappa is
/// truncated once the discarded mass is below tol.
Measure kappa_of(const BernsteinFunction& f, double tol = 1e-17);

/// s_0 = 1, s_n = f(alpha) f(alpha + beta) ... f(alpha + (n-1) beta), via log prefix sums.
MomentSequence power_moments(const BernsteinFunction& f, double alpha, double beta);

/// Image of e^{-alpha x} dkappa(x) / (x (1 - e^{-beta x})) under x -> e^{-beta x}; lives on (0, 1).
Measure sigma_of(const BernsteinFunction& f, double alpha, double beta, double tol = 1e-17);

/// log s_n = a n + b n^2 + int (x^n - 1 - n (x - 1)) dsigma(x).
struct LevyKhinchinRep {
  double a = 0.0;
  double b = 0.0;
  Measure sigma = AtomicMeasure{};
};

/// The representation with a = log f(alpha), b = 0, sigma = sigma_of(f, alpha, beta).
LevyKhinchinRep levy_khinchin_rep(const BernsteinFunction& f, double alpha, double beta);

/// x^n - 1 - n (x - 1), written as (x - 1)^2 sum_{j <= n-2} (n - 1 - j) x^j.
double lk_kernel(double x, std::size_t n);

double lk_log_moment(const LevyKhinchinRep& rep, std::size_t n, const QuadConfig& cfg = {});

double log_moment_via_rep(const BernsteinFunction& f, double alpha, double beta, std::size_t n,
                          const QuadConfig& cfg = {});

/// psi(z) = -z log f(alpha) + int ((1 - e^{-z beta x}) - z (1 - e^{-beta x}))
///          e^{-alpha x} / (x (1 - e^{-beta x})) dkappa(x),   Re z >= 0.
/// The Mellin transform of rho_c is exp(-c psi(z)), and psi(n) = -log s_n.
std::complex<double> psi(const BernsteinFunction& f, double alpha, double beta, std::complex<double> z,
                         const QuadConfig& cfg = {});

}  // namespace momentforge
