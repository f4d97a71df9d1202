#include "momentforge/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "momentforge/error.hpp"
#include "momentforge/special.hpp"

namespace momentforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEagerTerms = 64;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Smallest K with bound(K) <= tol, for a bound decreasing in K.
template <class Bound>
std::size_t truncation_index(Bound bound, double tol) {
  std::size_t k = 1;
  while (bound(k) > tol) {
    if (++k > 100000) {
      throw BudgetError("truncation index exceeds 100000 terms");
    }
  }
  return k;
}

struct KappaAtoms {
  std::vector<Atom> atoms;  // location k L, weight (a^k - b^k) L
  std::size_t count = 0;
};

// Atoms of kappa for QRatio, k = 1..K.
KappaAtoms qratio_kappa_atoms(double a, double b, double L, std::size_t K) {
  KappaAtoms out;
  out.count = K;
  double ak = 1.0;
  double bk = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    ak *= a;
    bk *= b;
    out.atoms.push_back({static_cast<double>(k) * L, (ak - bk) * L});
  }
  return out;
}

void check_admissible(const BernsteinFunction& f, double alpha, double beta) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha) || !(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("need alpha >= 0 and beta > 0");
  }
  if (!(f(alpha) > 0.0)) {
    throw PreconditionError(f.catalog_id() + ": f(alpha) must be positive (alpha = " + fmt(alpha) + ")");
  }
}

void require_kappa(const BernsteinFunction& f) {
  if (!f.has_kappa()) {
    throw UnsupportedError(f.catalog_id() + " has no analytic kappa measure in the catalog");
  }
}

// int_1^inf dkappa(x) / x must be finite when alpha = 0.
void check_kappa_tail(const Measure& kappa) {
  const auto* dens = std::get_if<DensityMeasure>(&kappa);
  if (dens == nullptr) {
    return;
  }
  auto g = [&](double u) {
    const double x = 1.0 - std::log(u);
    return std::exp(dens->log_density(x) - std::log(x)) / u;
  };
  QuadConfig cfg;
  cfg.rel_tol = 1e-8;
  cfg.max_panels = 2048;
  try {
    const auto r = integrate_adaptive<double>(g, 0.0, 1.0, cfg);
    if (!std::isfinite(r.value)) {
      throw QuadratureFailure("diverged", kInf);
    }
  } catch (const QuadratureFailure&) {
    throw PreconditionError("alpha = 0 needs int_1^inf dkappa(x)/x < inf, which fails numerically");
  }
}

// Taylor series of (1 - e^{-z w}) - z (1 - e^{-w}) = sum_{m>=2} (-1)^{m+1} w^m (z^m - z) / m!.
std::complex<double> psi_numerator_series(std::complex<double> z, double w) {
  std::complex<double> sum = 0.0;
  std::complex<double> zm = z;
  double wm = w;
  double sign = 1.0;
  for (int m = 2; m <= 40; ++m) {
    zm *= z;
    wm *= w / static_cast<double>(m);
    sign = -sign;
    const std::complex<double> term = sign * wm * (zm - z);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

std::complex<double> psi_numerator(std::complex<double> z, double w) {
  if (w * std::max(1.0, std::abs(z)) < 0.1) {
    return psi_numerator_series(z, w);
  }
  return -expm1(-z * w) + z * std::expm1(-w);
}

}  // namespace

BernsteinFunction::BernsteinFunction(Kind kind, std::string id, double p0, double p1, double p2)
    : kind_(kind), id_(std::move(id)), p_{p0, p1, p2} {}

BernsteinFunction BernsteinFunction::affine(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError("affine: need a >= 0");
  }
  BernsteinFunction f(Kind::Affine, "affine:" + fmt(a), a, 0.0, 0.0);
  f.a_ = a;
  f.b_ = 1.0;
  f.levy_ = AtomicMeasure{};
  f.self_test();
  return f;
}

BernsteinFunction BernsteinFunction::linear() {
  BernsteinFunction f(Kind::Linear, "linear", 0.0, 0.0, 0.0);
  f.b_ = 1.0;
  f.levy_ = AtomicMeasure{};
  f.self_test();
  return f;
}

BernsteinFunction BernsteinFunction::ratio(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("ratio: need 0 <= a < b");
  }
  BernsteinFunction f(Kind::Ratio, "ratio:" + fmt(a) + ":" + fmt(b), a, b, 0.0);
  f.a_ = a / b;
  const double log_c = std::log(b - a);
  f.levy_ = DensityMeasure([log_c, b](double x) { return log_c - b * x; }, 0.0, kInf,
                           QuadratureHint::ExponentialDecay, "levy[" + f.id_ + "]", {{"a", a}, {"b", b}}, -1.0);
  f.self_test();
  return f;
}

BernsteinFunction BernsteinFunction::mobius() {
  BernsteinFunction f = ratio(0.0, 1.0);
  f.id_ = "mobius";
  return f;
}

BernsteinFunction BernsteinFunction::qratio(double a, double b, double q) {
  if (!(b >= 0.0) || !(a > b) || !(a < 1.0) || !(q > 0.0) || !(q < 1.0)) {
    throw DomainError("qratio: need 0 <= b < a < 1 and 0 < q < 1");
  }
  BernsteinFunction f(Kind::QRatio, "qratio:" + fmt(a) + ":" + fmt(b) + ":" + fmt(q), a, b, q);
  const double L = -std::log(q);
  f.a_ = (1.0 - a) / (1.0 - b);
  // nu = (a - b) sum_k b^k delta_{(k+1) L}
  std::vector<Atom> atoms;
  double tail = 0.0;
  if (b == 0.0) {
    atoms.push_back({L, a});
  } else {
    const std::size_t K = truncation_index(
        [&](std::size_t k) { return (a - b) * std::pow(b, static_cast<double>(k + 1)) / (1.0 - b); }, 1e-18);
    double bk = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
      atoms.push_back({static_cast<double>(k + 1) * L, (a - b) * bk});
      bk *= b;
    }
    tail = (a - b) * std::pow(b, static_cast<double>(K + 1)) / (1.0 - b);
  }
  f.levy_ = AtomicMeasure(std::move(atoms), 0.0, tail);
  f.self_test();
  return f;
}

BernsteinFunction BernsteinFunction::power_tower() {
  BernsteinFunction f(Kind::PowerTower, "powertower", 0.0, 0.0, 0.0);
  f.self_test();
  return f;
}

double BernsteinFunction::operator()(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError(id_ + ": argument must be nonnegative");
  }
  switch (kind_) {
    case Kind::Affine:
      return p_[0] + s;
    case Kind::Linear:
      return s;
    case Kind::Ratio:
      return (p_[0] + s) / (p_[1] + s);
    case Kind::QRatio: {
      const double qs = std::pow(p_[2], s);
      return (1.0 - p_[0] * qs) / (1.0 - p_[1] * qs);
    }
    case Kind::PowerTower:
      return std::exp(log_value(s));
  }
  return 0.0;
}

double BernsteinFunction::log_value(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError(id_ + ": argument must be nonnegative");
  }
  switch (kind_) {
    case Kind::Affine:
      return std::log(p_[0] + s);
    case Kind::Linear:
      return std::log(s);
    case Kind::Ratio:
      return std::log(p_[0] + s) - std::log(p_[1] + s);
    case Kind::QRatio: {
      const double qs = std::pow(p_[2], s);
      return std::log1p(-p_[0] * qs) - std::log1p(-p_[1] * qs);
    }
    case Kind::PowerTower:
      return s == 0.0 ? 0.0 : (s + 1.0) * std::log1p(s) - s * std::log(s);
  }
  return 0.0;
}

double BernsteinFunction::derivative(double s) const {
  if (!(s >= 0.0)) {
    throw DomainError(id_ + ": argument must be nonnegative");
  }
  switch (kind_) {
    case Kind::Affine:
    case Kind::Linear:
      return 1.0;
    case Kind::Ratio: {
      const double d = p_[1] + s;
      return (p_[1] - p_[0]) / (d * d);
    }
    case Kind::QRatio: {
      const double qs = std::pow(p_[2], s);
      const double d = 1.0 - p_[1] * qs;
      return (p_[0] - p_[1]) * -std::log(p_[2]) * qs / (d * d);
    }
    case Kind::PowerTower:
      return s == 0.0 ? kInf : (*this)(s) * std::log1p(1.0 / s);
  }
  return 0.0;
}

void BernsteinFunction::self_test() const {
  if (levy_) {
    for (double s : {0.1, 1.0, 10.0}) {
      const double closed = (*this)(s);
      const double via = eval_via_levy(*this, s);
      if (std::abs(closed - via) > 1e-9 * std::max(1.0, std::abs(closed))) {
        throw InconsistencyError(id_ + ": Levy representation disagrees with the closed form at s = " + fmt(s));
      }
    }
  }
  double prev = 0.0;
  for (double s : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
    const double v = (*this)(s);
    if (!(v >= prev)) {
      throw InconsistencyError(id_ + ": not nonnegative and nondecreasing at s = " + fmt(s));
    }
    prev = v;
  }
}

double eval(const BernsteinFunction& f, double s) { return f(s); }

double eval_via_levy(const BernsteinFunction& f, double s, const QuadConfig& cfg) {
  if (!f.levy()) {
    throw UnsupportedError(f.catalog_id() + " has no Levy triple in the catalog");
  }
  if (!(s >= 0.0)) {
    throw DomainError(f.catalog_id() + ": argument must be nonnegative");
  }
  auto r = integrate<double>(*f.levy(), [s](double x) { return -std::expm1(-s * x); }, cfg);
  return f.constant_term() + f.linear_term() * s + r.value;
}

Measure kappa_of(const BernsteinFunction& f, double tol) {
  require_kappa(f);
  const std::map<std::string, double> no_params;
  switch (f.kind()) {
    case BernsteinFunction::Kind::Affine: {
      const double a = f.param(0);
      return DensityMeasure([a](double x) { return -a * x; }, 0.0, kInf, QuadratureHint::ExponentialDecay,
                            "kappa[" + f.catalog_id() + "]", {{"a", a}}, a > 0.0 ? -1.0 : kInf);
    }
    case BernsteinFunction::Kind::Linear:
      return DensityMeasure([](double) { return 0.0; }, 0.0, kInf, QuadratureHint::ExponentialDecay,
                            "kappa[linear]", no_params, kInf);
    case BernsteinFunction::Kind::Ratio: {
      const double a = f.param(0);
      const double b = f.param(1);
      return DensityMeasure([a, b](double x) { return -a * x + std::log(-std::expm1(-(b - a) * x)); }, 0.0, kInf,
                            QuadratureHint::ExponentialDecay, "kappa[" + f.catalog_id() + "]", {{"a", a}, {"b", b}},
                            a > 0.0 ? -2.0 : kInf);
    }
    case BernsteinFunction::Kind::QRatio: {
      const double a = f.param(0);
      const double b = f.param(1);
      const double L = -std::log(f.param(2));
      auto tail = [&](std::size_t K) { return L * std::pow(a, static_cast<double>(K + 1)) / (1.0 - a); };
      const std::size_t K = truncation_index(tail, tol);
      return AtomicMeasure(qratio_kappa_atoms(a, b, L, K).atoms, 0.0, tail(K));
    }
    case BernsteinFunction::Kind::PowerTower:
      break;
  }
  throw UnsupportedError(f.catalog_id() + " has no analytic kappa measure in the catalog");
}

MomentSequence power_moments(const BernsteinFunction& f, double alpha, double beta) {
  check_admissible(f, alpha, beta);
  auto prefix = std::make_shared<std::vector<double>>(kEagerTerms + 1, 0.0);
  for (std::size_t k = 0; k < kEagerTerms; ++k) {
    (*prefix)[k + 1] = (*prefix)[k] + f.log_value(alpha + static_cast<double>(k) * beta);
  }
  std::shared_ptr<const std::vector<double>> cached = prefix;
  return MomentSequence::from_log([f, alpha, beta, cached](std::size_t n) {
    if (n <= kEagerTerms) {
      return (*cached)[n];
    }
    double acc = cached->back();
    for (std::size_t k = kEagerTerms; k < n; ++k) {
      acc += f.log_value(alpha + static_cast<double>(k) * beta);
    }
    return acc;
  });
}

Measure sigma_of(const BernsteinFunction& f, double alpha, double beta, double tol) {
  require_kappa(f);
  check_admissible(f, alpha, beta);
  const std::map<std::string, double> params{{"alpha", alpha}, {"beta", beta}};
  if (f.kind() == BernsteinFunction::Kind::QRatio) {
    const double a = f.param(0);
    const double b = f.param(1);
    const double L = -std::log(f.param(2));
    // Tail of the sigma weights beyond k = K.
    auto tail = [&](std::size_t K) {
      const double k1 = static_cast<double>(K + 1);
      return std::pow(a, k1) / ((1.0 - a) * k1 * -std::expm1(-beta * k1 * L));
    };
    const std::size_t K = truncation_index(tail, tol);
    std::vector<Atom> atoms;
    double zero = 0.0;
    for (const auto& k : qratio_kappa_atoms(a, b, L, K).atoms) {
      const double x = k.location;
      const double w = k.weight * std::exp(-alpha * x) / (x * -std::expm1(-beta * x));
      const double y = std::exp(-beta * x);
      if (y > 0.0) {
        atoms.push_back({y, w});
      } else {
        zero += w;
      }
    }
    return AtomicMeasure(std::move(atoms), zero, tail(K));
  }
  const Measure kappa = kappa_of(f, tol);
  if (alpha == 0.0) {
    check_kappa_tail(kappa);
  }
  const auto& dens = std::get<DensityMeasure>(kappa);
  const double log_beta = std::log(beta);
  auto log_sigma = [dens, alpha, beta, log_beta](double y) {
    const double x = -std::log(y) / beta;
    return dens.log_density(x) - alpha * x - log_beta - std::log(y) - std::log(x) - std::log1p(-y);
  };
  return DensityMeasure(log_sigma, 0.0, 1.0, QuadratureHint::FiniteInterval, "sigma[" + f.catalog_id() + "]", params);
}

LevyKhinchinRep levy_khinchin_rep(const BernsteinFunction& f, double alpha, double beta) {
  LevyKhinchinRep rep;
  rep.sigma = sigma_of(f, alpha, beta);
  rep.a = f.log_value(alpha);
  rep.b = 0.0;
  return rep;
}

double lk_kernel(double x, std::size_t n) {
  if (n < 2) {
    return 0.0;
  }
  // Horner on sum_{j=0}^{n-2} (n-1-j) x^j.
  double s = 0.0;
  for (std::size_t j = n - 1; j-- > 0;) {
    s = s * x + static_cast<double>(n - 1 - j);
  }
  const double d = x - 1.0;
  return d * d * s;
}

double lk_log_moment(const LevyKhinchinRep& rep, std::size_t n, const QuadConfig& cfg) {
  if (!(rep.b >= 0.0)) {
    throw DomainError("lk_log_moment: b must be nonnegative");
  }
  const double dn = static_cast<double>(n);
  double integral = 0.0;
  if (n >= 2) {
    if (const auto* atomic = std::get_if<AtomicMeasure>(&rep.sigma)) {
      integral = integrate<double>(*atomic, [n](double x) { return lk_kernel(x, n); }).value;
    } else {
      const auto& dens = std::get<DensityMeasure>(rep.sigma);
      // (x - 1)^2 is folded into the log density so the 1/(1-x)^2 growth cancels exactly.
      auto g = [n](double x, double ld) {
        if (x == 1.0) {
          return 0.0;
        }
        double s = 0.0;
        for (std::size_t j = n - 1; j-- > 0;) {
          s = s * x + static_cast<double>(n - 1 - j);
        }
        return std::exp(ld + 2.0 * std::log(std::abs(x - 1.0))) * s;
      };
      integral = dens.integrate<double>(g, cfg).value;
    }
  }
  return rep.a * dn + rep.b * dn * dn + integral;
}

double log_moment_via_rep(const BernsteinFunction& f, double alpha, double beta, std::size_t n,
                          const QuadConfig& cfg) {
  return lk_log_moment(levy_khinchin_rep(f, alpha, beta), n, cfg);
}

std::complex<double> psi(const BernsteinFunction& f, double alpha, double beta, std::complex<double> z,
                         const QuadConfig& cfg) {
  if (!(z.real() >= 0.0)) {
    throw DomainError("psi: Re z must be nonnegative");
  }
  require_kappa(f);
  check_admissible(f, alpha, beta);
  const std::complex<double> head = -z * f.log_value(alpha);
  if (z == std::complex<double>(0.0)) {
    return 0.0;
  }
  const Measure kappa = kappa_of(f);
  if (alpha == 0.0) {
    check_kappa_tail(kappa);
  }
  auto weight_log = [alpha, beta](double x) { return -alpha * x - std::log(x) - std::log(-std::expm1(-beta * x)); };
  if (const auto* atomic = std::get_if<AtomicMeasure>(&kappa)) {
    auto r = integrate<std::complex<double>>(
        *atomic, [&](double x) { return psi_numerator(z, beta * x) * std::exp(weight_log(x)); });
    return head + r.value;
  }
  const auto& dens = std::get<DensityMeasure>(kappa);
  auto r = dens.integrate<std::complex<double>>(
      [&](double x, double ld) { return psi_numerator(z, beta * x) * std::exp(ld + weight_log(x)); }, cfg);
  return head + r.value;
}

}  // namespace momentforge
