#include "momentforge/semigroups.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "momentforge/error.hpp"
#include "momentforge/special.hpp"

namespace momentforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEagerTerms = 64;

void check_gamma(const GammaFamily& fam) {
  if (!(fam.a > 0.0) || !(fam.c > 0.0) || !std::isfinite(fam.a) || !std::isfinite(fam.c)) {
    throw DomainError("gamma family: need a > 0 and c > 0");
  }
}

void check_beta(const BetaFamily& fam) {
  if (!(fam.a > 0.0) || !(fam.b > fam.a) || !(fam.c > 0.0) || !std::isfinite(fam.b) || !std::isfinite(fam.c)) {
    throw DomainError("beta family: need 0 < a < b and c > 0");
  }
}

void check_vc(const LogNormalQFamily& fam) {
  if (!(fam.q > 0.0) || !(fam.q < 1.0) || !(fam.c > 0.0) || !std::isfinite(fam.c)) {
    throw DomainError("v_c family: need 0 < q < 1 and c > 0");
  }
}

void check_strip(double lo, std::complex<double> z, const char* what) {
  if (!(z.real() > lo)) {
    throw DomainError(std::string(what) + ": Re z must exceed " + std::to_string(lo));
  }
}

}  // namespace

DensityMeasure gamma_density(const GammaFamily& fam) {
  check_gamma(fam);
  if (fam.c != 1.0) {
    throw UnsupportedError("gamma_density: only c = 1 has a closed-form density");
  }
  const double a = fam.a;
  const double norm = std::lgamma(a);
  return DensityMeasure([a, norm](double x) { return (a - 1.0) * std::log(x) - x - norm; }, 0.0, kInf,
                        QuadratureHint::ExponentialDecay, "gamma", {{"a", a}, {"c", 1.0}}, -a);
}

std::complex<double> gamma_mellin(const GammaFamily& fam, std::complex<double> z) {
  check_gamma(fam);
  check_strip(-fam.a, z, "gamma_mellin");
  if (z == 0.0) {
    return 1.0;
  }
  return std::exp(fam.c * (log_gamma(fam.a + z) - std::lgamma(fam.a)));
}

MomentSequence gamma_moments(const GammaFamily& fam) {
  check_gamma(fam);
  return MomentSequence::from_log([fam](std::size_t n) { return fam.c * log_pochhammer(fam.a, n); });
}

DensityMeasure beta_density(const BetaFamily& fam) {
  check_beta(fam);
  if (fam.c != 1.0) {
    throw UnsupportedError("beta_density: only c = 1 has a closed-form density");
  }
  const double a = fam.a;
  const double b = fam.b;
  const double norm = log_beta(a, b - a);
  return DensityMeasure(
      [a, b, norm](double x) { return (a - 1.0) * std::log(x) + (b - a - 1.0) * std::log1p(-x) - norm; }, 0.0, 1.0,
      QuadratureHint::FiniteInterval, "beta", {{"a", a}, {"b", b}, {"c", 1.0}}, -a);
}

std::complex<double> beta_mellin(const BetaFamily& fam, std::complex<double> z) {
  check_beta(fam);
  check_strip(-fam.a, z, "beta_mellin");
  if (z == 0.0) {
    return 1.0;
  }
  const std::complex<double> ga = log_gamma(fam.a + z) - std::lgamma(fam.a);
  const std::complex<double> gb = log_gamma(fam.b + z) - std::lgamma(fam.b);
  return std::exp(fam.c * (ga - gb));
}

MomentSequence beta_moments(const BetaFamily& fam) {
  check_beta(fam);
  return MomentSequence::from_log(
      [fam](std::size_t n) { return fam.c * (log_pochhammer(fam.a, n) - log_pochhammer(fam.b, n)); });
}

DensityMeasure vc_density(const LogNormalQFamily& fam) {
  check_vc(fam);
  const double log_q = std::log(fam.q);
  const double L = -fam.c * log_q;
  const double head = fam.c * log_q / 8.0 - 0.5 * std::log(2.0 * std::numbers::pi * L);
  return DensityMeasure(
      [head, L](double x) {
        const double u = std::log(x);
        return head - 0.5 * u - u * u / (2.0 * L);
      },
      0.0, kInf, QuadratureHint::LogSubstitution, "vclognormal", {{"q", fam.q}, {"c", fam.c}}, -kInf, std::sqrt(L));
}

std::complex<double> vc_mellin(const LogNormalQFamily& fam, std::complex<double> z) {
  check_vc(fam);
  return std::exp(-0.5 * fam.c * z * (z + 1.0) * std::log(fam.q));
}

MomentSequence vc_moments(const LogNormalQFamily& fam) {
  check_vc(fam);
  const double log_q = std::log(fam.q);
  return MomentSequence::from_log([fam, log_q](std::size_t n) {
    const double dn = static_cast<double>(n);
    return -0.5 * fam.c * dn * (dn + 1.0) * log_q;
  });
}

MomentSequence t_transform(const MomentSequence& a) {
  if (!a.normalized()) {
    throw PreconditionError("t_transform: input must be normalized (a_0 = 1)");
  }
  auto log_a = [a](std::size_t n) {
    const double v = a.log_value(n);
    if (std::isnan(v) || v == -kInf) {
      throw DomainError("t_transform: a_" + std::to_string(n) + " is not positive");
    }
    return v;
  };
  auto prefix = std::make_shared<std::vector<double>>(kEagerTerms + 1, 0.0);
  try {
    for (std::size_t n = 1; n <= kEagerTerms; ++n) {
      (*prefix)[n] = (*prefix)[n - 1] - log_a(n);
    }
  } catch (const RangeError&) {
    // Finite inputs are validated up to their length; later terms throw on access.
  }
  const std::size_t checked = a.length() ? std::min(*a.length() - 1, kEagerTerms) : kEagerTerms;
  std::shared_ptr<const std::vector<double>> cached = prefix;
  return MomentSequence::from_log([cached, checked, log_a](std::size_t n) {
    if (n <= checked) {
      return (*cached)[n];
    }
    double acc = (*cached)[checked];
    for (std::size_t k = checked + 1; k <= n; ++k) {
      acc -= log_a(k);
    }
    return acc;
  });
}

MomentSequence t_transform_inverse(const MomentSequence& s) {
  if (!s.normalized()) {
    throw PreconditionError("t_transform_inverse: input must be normalized (s_0 = 1)");
  }
  return MomentSequence::from_log([s](std::size_t n) {
    if (n == 0) {
      return 0.0;
    }
    const double hi = s.log_value(n);
    if (!std::isfinite(hi)) {
      throw DomainError("t_transform_inverse: s_" + std::to_string(n) + " is not positive");
    }
    return s.log_value(n - 1) - hi;
  });
}

}  // namespace momentforge
