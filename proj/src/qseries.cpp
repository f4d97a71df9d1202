#include "momentforge/qseries.hpp"

#include <algorithm>
#include <cmath>

#include "momentforge/error.hpp"

namespace momentforge {

namespace {

constexpr std::size_t kMaxTerms = 100000;
constexpr int kTauMomentOrder = 12;

void check_q(double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw DomainError("q-series: need 0 < q < 1");
  }
}

void check_ordered(const QParams& p) {
  check_q(p.q);
  if (!(p.b >= 0.0) || !(p.a > p.b) || !(p.a < 1.0)) {
    throw DomainError("q-series: need 0 <= b < a < 1");
  }
}

// sum_k log(1 - z q^k) for |z| < 1 / q^0, real z < 1.
double log_qpoch_inf(double z, double q) {
  double acc = 0.0;
  double term = z;
  for (std::size_t k = 0; k < kMaxTerms && std::abs(term) > 1e-18 * (1.0 - q); ++k) {
    acc += std::log1p(-term);
    term *= q;
  }
  return acc;
}

std::complex<double> log1m(std::complex<double> u) {
  if (std::abs(u) < 1e-4) {
    return -(u + u * u / 2.0 + u * u * u / 3.0 + u * u * u * u / 4.0);
  }
  return std::log(1.0 - u);
}

// Smallest K >= 1 with bound(K) <= tol.
template <class Bound>
std::size_t first_index_below(Bound bound, double tol) {
  for (std::size_t k = 1; k < kMaxTerms; ++k) {
    if (bound(k) <= tol) {
      return k;
    }
  }
  throw BudgetError("q-series: truncation index exceeds the term budget");
}

// Truncated product of coefficient vectors, degree <= K, trailing zeros trimmed.
std::vector<double> multiply(const std::vector<double>& x, const std::vector<double>& y, std::size_t K) {
  if (x.empty() || y.empty()) {
    return {};
  }
  const std::size_t deg = std::min(K, (x.size() - 1) + (y.size() - 1));
  std::vector<double> out(deg + 1, 0.0);
  for (std::size_t i = 0; i < x.size() && i <= deg; ++i) {
    if (x[i] == 0.0) {
      continue;
    }
    const std::size_t jmax = std::min(y.size() - 1, deg - i);
    for (std::size_t j = 0; j <= jmax; ++j) {
      out[i + j] += x[i] * y[j];
    }
  }
  while (out.size() > 1 && out.back() == 0.0) {
    out.pop_back();
  }
  return out;
}

std::vector<double> power(std::vector<double> base, std::size_t e, std::size_t K) {
  std::vector<double> out{1.0};
  while (e > 0) {
    if (e & 1u) {
      out = multiply(out, base, K);
    }
    e >>= 1u;
    if (e > 0) {
      base = multiply(base, base, K);
    }
  }
  return out;
}

// sum_{k > K} k^n r^{-k}, from a tabulated suffix sum; the table runs until terms drop below 1e-80.
class LatticeTail {
 public:
  LatticeTail(double r, int n) {
    const double lr = std::log(r);
    const double peak = n / lr;
    for (std::size_t k = 1; k < kMaxTerms; ++k) {
      const double lt = n * std::log(static_cast<double>(k)) - static_cast<double>(k) * lr;
      const double t = std::exp(lt);
      terms_.push_back(t);
      if (static_cast<double>(k) > 2.0 * peak + 1.0 && t < 1e-80) {
        break;
      }
    }
    suffix_.assign(terms_.size() + 1, 0.0);
    for (std::size_t i = terms_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + terms_[i];
    }
  }
  // Index k = i + 1 sits at terms_[i]; tail beyond K starts at terms_[K].
  double beyond(std::size_t K) const { return K < suffix_.size() ? suffix_[K] : 0.0; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<double> terms_;
  std::vector<double> suffix_;
};

}  // namespace

QPochValue qpoch_eval(double z, double q, std::size_t n, double tol) {
  check_q(q);
  if (!(tol > 0.0)) {
    throw DomainError("qpoch: tol must be positive");
  }
  QPochValue out;
  double qk = 1.0;
  if (n != kInfiniteProduct) {
    for (std::size_t k = 0; k < n; ++k) {
      out.value *= 1.0 - z * qk;
      qk *= q;
    }
    out.factors = n;
    return out;
  }
  std::size_t k = 0;
  while (std::abs(z) * qk >= tol * (1.0 - q)) {
    if (k >= kMaxTerms) {
      throw BudgetError("qpoch: infinite product did not settle");
    }
    out.value *= 1.0 - z * qk;
    qk *= q;
    ++k;
  }
  const double tail = std::abs(z) * qk;
  out.factors = k;
  out.log_error = tail == 0.0 ? 0.0 : tail / ((1.0 - q) * (1.0 - tail));
  return out;
}

double qpoch(double z, double q, std::size_t n, double tol) { return qpoch_eval(z, q, n, tol).value; }

std::complex<double> log_qpoch_infinite(std::complex<double> w, double q, double tol) {
  check_q(q);
  std::complex<double> acc = 0.0;
  std::complex<double> term = w;
  std::size_t k = 0;
  while (std::abs(term) >= tol * (1.0 - q)) {
    if (k++ >= kMaxTerms) {
      throw BudgetError("log_qpoch_infinite: product did not settle");
    }
    if (term == 1.0) {
      throw DomainError("log_qpoch_infinite: a factor vanishes");
    }
    acc += log1m(term);
    term *= q;
  }
  return acc;
}

AtomicMeasure mu_abq(const QParams& p, double tol) {
  check_ordered(p);
  const double a = p.a;
  const double b = p.b;
  const double q = p.q;
  double w = std::exp(log_qpoch_inf(a, q) - log_qpoch_inf(b, q));
  std::vector<Atom> atoms;
  double qk = 1.0;  // q^k
  for (std::size_t k = 0;; ++k) {
    atoms.push_back({qk, w});
    const double q_next = qk * q;
    const double rho = a / (1.0 - q_next);
    if (rho < 1.0) {
      const double tail = w * rho / (1.0 - rho);
      if (tail <= tol) {
        return AtomicMeasure(std::move(atoms), 0.0, tail);
      }
    }
    if (k >= kMaxTerms || !(q_next > 0.0)) {
      throw BudgetError("mu_abq: tail bound not reached before underflow");
    }
    w *= (a - b * qk) / (1.0 - q_next);
    qk = q_next;
  }
}

MomentSequence qbeta_moments(const QParams& p, double c) {
  check_q(p.q);
  if (!(p.a < 1.0) || !(p.b < 1.0) || !(c > 0.0)) {
    throw DomainError("qbeta_moments: need a, b < 1 and c > 0");
  }
  return MomentSequence::from_log([p, c](std::size_t n) {
    double acc = 0.0;
    double qk = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += std::log1p(-p.a * qk) - std::log1p(-p.b * qk);
      qk *= p.q;
    }
    return c * acc;
  });
}

double qbinomial_check(double a, double b, double q, std::size_t N, std::size_t K) {
  check_q(q);
  if (!(a >= 0.0) || !(a < 1.0) || !(b >= 0.0) || !(b < a || (a == 0.0 && b == 0.0))) {
    throw DomainError("qbinomial_check: need 0 <= b < a < 1 (or a = b = 0)");
  }
  const double ratio = a == 0.0 ? 0.0 : b / a;
  double worst = 0.0;
  double qn = 1.0;
  for (std::size_t n = 0; n <= N; ++n) {
    double term = 1.0;
    double series = 1.0;
    double qk = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      term *= (1.0 - ratio * qk) / (1.0 - qk * q) * a * qn;
      series += term;
      qk *= q;
    }
    const double product = std::exp(log_qpoch_inf(b * qn, q) - log_qpoch_inf(a * qn, q));
    worst = std::max(worst, std::abs(series - product));
    qn *= q;
  }
  return worst;
}

AtomicMeasure nu_a(double a, double q, double tol) {
  check_q(q);
  if (!(a >= 0.0) || !(a < 1.0)) {
    throw DomainError("nu_a: need 0 <= a < 1");
  }
  if (a == 0.0) {
    return AtomicMeasure{};
  }
  const double L = -std::log(q);
  auto tail = [&](std::size_t K) {
    const double k1 = static_cast<double>(K + 1);
    return std::pow(a, k1) / (k1 * -std::expm1(k1 * std::log(q)) * (1.0 - a));
  };
  const std::size_t K = first_index_below(tail, tol);
  std::vector<Atom> atoms;
  double ak = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    ak *= a;
    const double dk = static_cast<double>(k);
    atoms.push_back({dk * L, ak / (dk * -std::expm1(dk * std::log(q)))});
  }
  return AtomicMeasure(std::move(atoms), 0.0, tail(K));
}

AtomicMeasure tau_c(const QParams& p, double c, double tol, std::optional<std::size_t> k_exp) {
  check_ordered(p);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("tau_c: need c > 0");
  }
  if (k_exp && *k_exp < 1) {
    throw PreconditionError("tau_c: k_exp must be at least 1");
  }
  const double a = p.a;
  const double b = p.b;
  const double q = p.q;
  const double L = -std::log(q);
  // mass of nu_a - nu_b
  const double M = log_qpoch_inf(b, q) - log_qpoch_inf(a, q);

  // Generating function F(r) = sum_k t_k r^k = ((a;q)(br;q) / ((b;q)(ar;q)))^c, r < 1/a.
  auto log_F = [&](double r) {
    return c * (log_qpoch_inf(a, q) + log_qpoch_inf(b * r, q) - log_qpoch_inf(b, q) - log_qpoch_inf(a * r, q));
  };
  std::size_t K = kMaxTerms;
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const double r = 1.0 + (1.0 / a - 1.0) * t;
    const double lf = log_F(r);
    const LatticeTail mass(r, 0);
    const LatticeTail mom(r, kTauMomentOrder);
    const double scale = std::pow(std::max(L, 1.0), kTauMomentOrder);
    for (std::size_t k = 1; k < std::min({K, mass.size(), mom.size()}); ++k) {
      const double bound = std::exp(lf) * std::max(mass.beyond(k), scale * mom.beyond(k));
      if (bound <= tol) {
        K = k;
        break;
      }
    }
  }
  if (K == kMaxTerms) {
    throw BudgetError("tau_c: lattice tail bound not reached");
  }
  double lattice_tail = kMaxTerms;
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const double r = 1.0 + (1.0 / a - 1.0) * t;
    lattice_tail = std::min(lattice_tail, std::exp(log_F(r)) * LatticeTail(r, 0).beyond(K));
  }

  std::vector<double> d(K + 1, 0.0);
  double ak = 1.0;
  double bk = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    ak *= a;
    bk *= b;
    const double dk = static_cast<double>(k);
    d[k] = (ak - bk) / (dk * -std::expm1(dk * std::log(q)));
  }
  const std::size_t J = k_exp ? std::min(*k_exp, K) : K;
  std::vector<double> weights(K + 1, 0.0);
  std::vector<double> u(K + 1, 0.0);
  u[0] = 1.0;
  weights[0] = 1.0;
  for (std::size_t j = 1; j <= J; ++j) {
    // u <- (c / j) * (u * d), supported on indices >= j.
    std::vector<double> next(K + 1, 0.0);
    for (std::size_t i = j - 1; i <= K; ++i) {
      if (u[i] == 0.0) {
        continue;
      }
      for (std::size_t m = 1; i + m <= K; ++m) {
        next[i + m] += u[i] * d[m];
      }
    }
    const double f = c / static_cast<double>(j);
    for (std::size_t i = j; i <= K; ++i) {
      next[i] *= f;
      weights[i] += next[i];
    }
    u.swap(next);
  }
  double series_tail = 0.0;
  if (J < K) {
    const double cm = c * M;
    series_tail = std::exp(static_cast<double>(J + 1) * std::log(cm) - std::lgamma(static_cast<double>(J + 2)));
  }
  const double prefactor = std::exp(-c * M);
  std::vector<Atom> atoms;
  atoms.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) {
    atoms.push_back({static_cast<double>(k) * L, prefactor * weights[k]});
  }
  return AtomicMeasure(std::move(atoms), prefactor * weights[0], lattice_tail + series_tail);
}

AtomicMeasure mu_c(const QParams& p, double c, double tol) {
  return pushforward(tau_c(p, c, tol), ExpNegMap{1.0});
}

std::complex<double> mellin_qbeta(const QParams& p, double c, std::complex<double> z) {
  check_ordered(p);
  if (!(c > 0.0)) {
    throw DomainError("mellin_qbeta: need c > 0");
  }
  const double strip = -std::log(p.a) / std::log(p.q);
  if (!(z.real() > strip)) {
    throw DomainError("mellin_qbeta: need Re z > -log a / log q = " + std::to_string(strip));
  }
  if (z == 0.0) {
    return 1.0;
  }
  const std::complex<double> qz = std::exp(z * std::log(p.q));
  std::complex<double> acc = log_qpoch_infinite(p.a, p.q) - log_qpoch_infinite(p.a * qz, p.q);
  if (p.b > 0.0) {
    acc += log_qpoch_infinite(p.b * qz, p.q) - log_qpoch_infinite(p.b, p.q);
  }
  return std::exp(c * acc);
}

double PowerSeries::operator()(double z) const {
  double acc = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    acc = acc * z + coefficients[k];
  }
  return acc;
}

PowerSeries hp_coefficients(double p, double q, std::size_t K) {
  check_q(q);
  if (!(p >= 0.0) || !(p < 1.0)) {
    throw DomainError("hp_coefficients: need 0 <= p < 1");
  }
  // Factors j > J change every coefficient by a relative amount below 1e-18.
  std::size_t J = 1;
  {
    double tail = 0.0;
    std::vector<double> terms;
    double qj = 1.0;
    for (std::size_t j = 1; j < kMaxTerms; ++j) {
      qj *= q;
      const double t = static_cast<double>(j) * (1.0 - p) * qj / (1.0 - qj);
      terms.push_back(t);
      if (t < 1e-22 && static_cast<double>(j) * (1.0 - q) > 1.0) {
        break;
      }
    }
    J = terms.size();
    while (J > 1 && tail + terms[J - 1] <= 1e-18) {
      tail += terms[J - 1];
      --J;
    }
  }
  std::vector<double> result{1.0};
  double qj = 1.0;
  for (std::size_t j = 1; j <= J; ++j) {
    qj *= q;
    // (1 - p w) / (1 - w) = 1 + (1 - p) sum_{m>=1} w^m, w = z q^j.
    std::vector<double> base{1.0};
    double wm = 1.0;
    for (std::size_t m = 1; m <= K; ++m) {
      wm *= qj;
      if (wm == 0.0) {
        break;
      }
      base.push_back((1.0 - p) * wm);
    }
    result = multiply(result, power(std::move(base), j, K), K);
  }
  result.resize(K + 1, 0.0);
  return PowerSeries{std::move(result), 1.0 / q};
}

double hp_value(double p, double q, double x) {
  check_q(q);
  if (!(p >= 0.0) || !(p < 1.0) || !(x >= 0.0) || !(x * q < 1.0)) {
    throw DomainError("hp_value: need 0 <= p < 1 and 0 <= x < 1/q");
  }
  double acc = 0.0;
  double xq = x;
  for (std::size_t j = 1; j < kMaxTerms; ++j) {
    xq *= q;
    const double t = static_cast<double>(j) * (std::log1p(-p * xq) - std::log1p(-xq));
    acc += t;
    if (std::abs(t) < 1e-18 * std::max(1.0, std::abs(acc)) && static_cast<double>(j) * (1.0 - q) > 1.0) {
      break;
    }
  }
  return std::exp(acc);
}

AtomicMeasure sigma_abgamma(const QParams& p, double gamma, std::optional<std::size_t> K, double tol) {
  check_ordered(p);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("sigma_abgamma: need gamma > 0");
  }
  const double a = p.a;
  const double ratio = p.b / a;
  // c_k a^k <= h(r) (a/r)^k for a < r < 1/q; the tail past K is a geometric sum.
  std::vector<std::pair<double, double>> majorants;  // (a/r, h(r))
  for (double t : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    const double r = a + (1.0 / p.q - a) * t;
    majorants.emplace_back(a / r, hp_value(ratio, p.q, r));
  }
  auto tail = [&](std::size_t k) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [x, h] : majorants) {
      best = std::min(best, h * std::pow(x, static_cast<double>(k + 1)) / (1.0 - x));
    }
    return best;
  };
  const std::size_t cut = K ? *K : first_index_below(tail, tol);
  const PowerSeries series = hp_coefficients(ratio, p.q, cut);
  std::vector<Atom> atoms;
  atoms.reserve(cut + 1);
  double total = 0.0;
  double ak = 1.0;
  double qk = 1.0;
  for (std::size_t k = 0; k <= cut; ++k) {
    const double w = series.coefficients[k] * ak;
    total += w;
    atoms.push_back({gamma * qk, w});
    ak *= a;
    qk *= p.q;
  }
  for (auto& atom : atoms) {
    atom.weight /= total;
  }
  return AtomicMeasure(std::move(atoms), 0.0, tail(cut) / total);
}

double sigma_default_gamma(const QParams& p) {
  check_ordered(p);
  return std::exp(log_qpoch_inf(p.b, p.q) - log_qpoch_inf(p.a, p.q));
}

MomentSequence qbinom_moments(const QParams& p) {
  check_ordered(p);
  return MomentSequence::from_log([p](std::size_t n) {
    double acc = 0.0;
    double qk = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += static_cast<double>(n - k) * (std::log1p(-p.b * qk) - std::log1p(-p.a * qk));
      qk *= p.q;
    }
    return acc;
  });
}

}  // namespace momentforge
