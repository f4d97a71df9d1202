#include "momentforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "momentforge/bernstein.hpp"
#include "momentforge/error.hpp"
#include "momentforge/hankel.hpp"
#include "momentforge/hermite.hpp"
#include "momentforge/qseries.hpp"
#include "momentforge/semigroups.hpp"
#include "momentforge/special.hpp"

namespace momentforge {

namespace {

using cd = std::complex<double>;

// Runs body, which raises `worst` through observe(); errors fail the check.
CheckResult run_check(const std::string& suite, const std::string& name, double threshold,
                      const std::function<void(std::function<void(double)>, std::string&)>& body) {
  CheckResult r;
  r.suite = suite;
  r.name = name;
  r.threshold = threshold;
  double worst = 0.0;
  try {
    body([&](double v) { worst = std::max(worst, std::isnan(v) ? std::numeric_limits<double>::infinity() : v); },
         r.detail);
    r.max_residual = worst;
    r.passed = worst <= threshold;
  } catch (const Error& e) {
    r.max_residual = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

std::vector<QParams> q_grid() {
  std::vector<QParams> out;
  for (double a : {0.3, 0.5, 0.7}) {
    for (double b : {0.0, 0.1, 0.25}) {
      for (double q : {0.3, 0.5, 0.8}) {
        out.push_back({a, b, q});
      }
    }
  }
  return out;
}

struct RepCase {
  BernsteinFunction f;
  double alpha;
  double beta;
};

std::vector<RepCase> rep_cases() {
  const std::vector<BernsteinFunction> fs = {
      BernsteinFunction::affine(1.0),     BernsteinFunction::affine(2.0),
      BernsteinFunction::ratio(1.0, 2.0), BernsteinFunction::ratio(0.5, 3.0),
      BernsteinFunction::qratio(0.5, 0.25, 0.5), BernsteinFunction::linear()};
  std::vector<RepCase> out;
  for (const auto& f : fs) {
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}}) {
      if (f(alpha) > 0.0) {
        out.push_back({f, alpha, beta});
      }
    }
  }
  return out;
}

double log_product(const BernsteinFunction& f, double alpha, double beta, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += std::log(f(alpha + static_cast<double>(k) * beta));
  }
  return acc;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct NamedSequence {
  std::string name;
  MomentSequence s;
  std::size_t N;
};

// Records a failing stieltjes_check in the residual and the detail string.
void hankel_case(const NamedSequence& seq, double tol, const std::function<void(double)>& observe,
                 std::string& detail) {
  const HankelVerdict v = stieltjes_check(seq.s, seq.N, tol);
  if (const auto* f = std::get_if<FailedAt>(&v.status)) {
    observe(std::abs(f->scaled_pivot));
    detail += (detail.empty() ? "" : "; ") + seq.name + " fails at order " + std::to_string(f->order) + " of " +
              to_string(f->matrix);
  }
}

}  // namespace

CheckResult check_representation_identity() {
  return run_check("bernstein-rep", "representation_identity", 1e-7, [](auto observe, auto&) {
    for (const auto& c : rep_cases()) {
      for (std::size_t n = 0; n <= 15; ++n) {
        observe(std::abs(log_moment_via_rep(c.f, c.alpha, c.beta, n) - log_product(c.f, c.alpha, c.beta, n)));
      }
    }
  });
}

CheckResult check_psi_consistency() {
  return run_check("bernstein-rep", "psi_consistency", 1e-7, [](auto observe, auto&) {
    for (const auto& c : rep_cases()) {
      for (std::size_t n = 0; n <= 15; ++n) {
        const cd p = psi(c.f, c.alpha, c.beta, static_cast<double>(n));
        observe(std::abs(p + log_product(c.f, c.alpha, c.beta, n)));
      }
    }
  });
}

CheckResult check_psi_endpoints() {
  return run_check("bernstein-rep", "psi_endpoints", 1e-12, [](auto observe, auto&) {
    for (const auto& c : rep_cases()) {
      observe(std::abs(psi(c.f, c.alpha, c.beta, 0.0)));
      observe(std::abs(psi(c.f, c.alpha, c.beta, 1.0) + std::log(c.f(c.alpha))));
    }
  });
}

CheckResult check_hankel_positivity(const VerifyOptions& opts) {
  return run_check("hankel", "hankel_positivity", 0.0, [&](auto observe, auto& detail) {
    const QParams p{0.5, 0.25, 0.5};
    const auto poch_ratio = MomentSequence::from_log(
        [](std::size_t n) { return log_pochhammer(0.5, n) - log_pochhammer(1.5, n); });
    const std::vector<NamedSequence> base = {
        {"n!", MomentSequence::from_log([](std::size_t n) { return std::lgamma(n + 1.0); }), 6},
        {"(0.5)_n", MomentSequence::from_log([](std::size_t n) { return log_pochhammer(0.5, n); }), 6},
        {"(0.5)_n/(1.5)_n", poch_ratio, 8},
        {"(0.5;0.5)_n/(0.25;0.5)_n", qbeta_moments(p), 8},
        {"0.5^{-n(n+1)/2}", vc_moments({0.5, 1.0}), 6},
        {"prod (1.5)_k/(0.5)_k", t_transform(poch_ratio), 6},
        {"prod (0.25;0.5)_k/(0.5;0.5)_k", qbinom_moments(p), 8},
    };
    for (double c : {0.5, 1.0, 2.0}) {
      for (const auto& seq : base) {
        hankel_case({seq.name + "^" + fmt(c), power_sequence(seq.s, c), seq.N}, opts.hankel_tol, observe, detail);
      }
    }
  });
}

CheckResult check_generated_sequences(const VerifyOptions& opts) {
  return run_check("hankel", "generated_sequences", 0.0, [&](auto observe, auto& detail) {
    std::vector<NamedSequence> seqs;
    for (double c : {0.5, 1.0, 2.0, 3.0}) {
      const std::string tag = "^" + fmt(c);
      for (const auto& rc : rep_cases()) {
        if (rc.alpha == 1.0 && rc.beta == 1.0) {
          seqs.push_back({rc.f.catalog_id() + tag, power_sequence(power_moments(rc.f, 1.0, 1.0), c), 8});
        }
      }
      seqs.push_back({"gamma:0.5" + tag, gamma_moments({0.5, c}), 8});
      seqs.push_back({"beta:0.5:3" + tag, beta_moments({0.5, 3.0, c}), 8});
      seqs.push_back({"vclognormal:0.5" + tag, vc_moments({0.5, c}), 8});
      for (const auto& p : {QParams{0.5, 0.25, 0.5}, QParams{0.7, 0.0, 0.8}, QParams{0.3, 0.1, 0.3}}) {
        seqs.push_back({"qbeta:" + fmt(p.a) + ":" + fmt(p.b) + ":" + fmt(p.q) + tag, qbeta_moments(p, c), 8});
        seqs.push_back({"sigmaq:" + fmt(p.a) + ":" + fmt(p.b) + ":" + fmt(p.q) + tag,
                        power_sequence(qbinom_moments(p), c), 8});
      }
    }
    for (const auto& seq : seqs) {
      hankel_case(seq, opts.hankel_tol, observe, detail);
    }
  });
}

CheckResult check_carleman() {
  return run_check("hankel", "carleman_sanity", 0.0, [](auto observe, auto& detail) {
    const auto fact = [](double power) {
      return MomentSequence::from_log([power](std::size_t n) { return power * std::lgamma(n + 1.0); });
    };
    const std::vector<std::pair<std::string, std::pair<MomentSequence, CarlemanVerdict>>> cases = {
        {"(n!)^1", {fact(1.0), CarlemanVerdict::DivergentPattern}},
        {"(n!)^3", {fact(3.0), CarlemanVerdict::ConvergentPattern}},
        {"constant", {MomentSequence::from_log([](std::size_t) { return 0.0; }), CarlemanVerdict::DivergentPattern}},
    };
    for (const auto& [name, c] : cases) {
      const auto d = carleman_diagnostic(c.first, 64);
      detail += (detail.empty() ? "" : "; ") + name + ": " + to_string(d.verdict);
      observe(d.verdict == c.second ? 0.0 : 1.0);
    }
  });
}

CheckResult check_qbeta_moment_identity() {
  return run_check("qseries", "qbeta_moment_identity", 1e-12, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      const auto mu = mu_abq(p);
      const auto s = qbeta_moments(p);
      for (std::size_t n = 0; n <= 10; ++n) {
        observe(std::abs(moment(mu, n).value.real() - s[n]));
      }
    }
  });
}

CheckResult check_qbeta_power_moments() {
  return run_check("qseries", "qbeta_power_moments", 1e-10, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      for (double c : {0.5, 1.0, 2.0, 3.0}) {
        const auto mu = mu_c(p, c);
        const auto s = qbeta_moments(p, c);
        for (std::size_t n = 0; n <= 10; ++n) {
          observe(std::abs(moment(mu, n).value.real() - s[n]));
        }
      }
    }
  });
}

CheckResult check_nu_mass() {
  return run_check("qseries", "nu_mass", 1e-11, [](auto observe, auto&) {
    for (double a : {0.3, 0.5, 0.7}) {
      for (double q : {0.3, 0.5, 0.8}) {
        observe(std::abs(nu_a(a, q).total_mass() + std::log(qpoch(a, q, kInfiniteProduct))));
      }
    }
  });
}

CheckResult check_qbinomial() {
  return run_check("qseries", "qbinomial_theorem", 1e-12, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      observe(qbinomial_check(p.a, p.b, p.q, 6, 400));
    }
    observe(qbinomial_check(0.0, 0.0, 0.5, 6, 10));
  });
}

CheckResult check_laplace() {
  return run_check("qseries", "laplace_transform", 1e-10, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      const auto tau = tau_c(p, 1.0);
      for (double s : {0.5, 1.0, 2.0}) {
        double atomic = tau.zero_mass();
        for (const auto& atom : tau.atoms()) {
          atomic += atom.weight * std::exp(-s * atom.location);
        }
        const double qs = std::pow(p.q, s);
        const double closed = qpoch(p.a, p.q, kInfiniteProduct) * qpoch(p.b * qs, p.q, kInfiniteProduct) /
                              (qpoch(p.b, p.q, kInfiniteProduct) * qpoch(p.a * qs, p.q, kInfiniteProduct));
        observe(std::abs(atomic - closed));
      }
    }
  });
}

CheckResult check_qbeta_mellin() {
  return run_check("qseries", "qbeta_mellin", 1e-10, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      for (double c : {0.5, 1.0, 2.0, 3.0}) {
        const auto mu = mu_c(p, c);
        for (std::size_t n = 0; n <= 10; ++n) {
          observe(std::abs(mellin_qbeta(p, c, static_cast<double>(n)) - moment(mu, n).value.real()));
        }
      }
      const auto mu = mu_abq(p);
      for (double y : {0.5, 1.0, 3.0}) {
        observe(std::abs(mellin_qbeta(p, 1.0, cd(0.0, y)) - mellin(mu, cd(0.0, y)).value));
      }
    }
  });
}

CheckResult check_gamma_beta_factorization() {
  return run_check("semigroup", "gamma_beta_factorization", 1e-12, [](auto observe, auto&) {
    for (auto [a, b, c] : {std::tuple{1.0, 2.0, 1.0}, {0.5, 3.0, 2.0}, {2.5, 4.0, 0.3}}) {
      for (cd z : {cd(0.5, 0.0), cd(1.0, 0.0), cd(2.0, 1.0)}) {
        const cd lhs = gamma_mellin({b, c}, z) * beta_mellin({a, b, c}, z);
        observe(std::abs(lhs - gamma_mellin({a, c}, z)) / std::max(1.0, std::abs(lhs)));
      }
    }
  });
}

CheckResult check_vc_family() {
  return run_check("semigroup", "vc_family_relative", 1e-8, [](auto observe, auto&) {
    for (double q : {0.3, 0.5, 0.8}) {
      for (double c : {0.5, 1.0, 2.0}) {
        const auto v = vc_density({q, c});
        for (std::size_t n = 0; n <= 6; ++n) {
          const double dn = static_cast<double>(n);
          const double oracle = std::pow(q, -c * dn * (dn + 1.0) / 2.0);
          observe(std::abs(moment(v, n).value.real() - oracle) / oracle);
        }
      }
    }
  });
}

namespace {

const std::vector<std::pair<double, double>>& semigroup_pairs() {
  static const std::vector<std::pair<double, double>> pairs = {{0.5, 0.5}, {1.0, 1.0}, {0.3, 1.7}};
  return pairs;
}

}  // namespace

CheckResult check_tau_semigroup() {
  return run_check("semigroup", "tau_semigroup", 1e-9, [](auto observe, auto&) {
    const QParams p{0.5, 0.25, 0.5};
    for (auto [c, d] : semigroup_pairs()) {
      const auto sum = additive_convolve(tau_c(p, c), tau_c(p, d));
      const auto direct = tau_c(p, c + d);
      for (std::size_t n = 0; n <= 6; ++n) {
        observe(std::abs(moment(sum, n).value.real() - moment(direct, n).value.real()));
      }
    }
  });
}

CheckResult check_tau_semigroup_grid() {
  return run_check("semigroup", "tau_semigroup_grid_scaled", 1e-9, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      for (auto [c, d] : semigroup_pairs()) {
        const auto sum = additive_convolve(tau_c(p, c), tau_c(p, d));
        const auto direct = tau_c(p, c + d);
        for (std::size_t n = 0; n <= 6; ++n) {
          const double m = moment(direct, n).value.real();
          observe(std::abs(moment(sum, n).value.real() - m) / std::max(1.0, m));
        }
      }
    }
  });
}

CheckResult check_mu_semigroup() {
  return run_check("semigroup", "mu_semigroup", 1e-9, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      for (auto [c, d] : semigroup_pairs()) {
        const auto prod = product_convolve(mu_c(p, c), mu_c(p, d));
        const auto direct = mu_c(p, c + d);
        for (std::size_t n = 0; n <= 6; ++n) {
          observe(std::abs(moment(prod, n).value.real() - moment(direct, n).value.real()));
        }
      }
    }
  });
}

CheckResult check_hp_nonnegative() {
  return run_check("qseries", "hp_nonnegative", 1e-14, [](auto observe, auto&) {
    for (double p : {0.1, 0.3, 0.7}) {
      for (double q : {0.3, 0.5, 0.8}) {
        for (double ck : hp_coefficients(p, q, 50).coefficients) {
          observe(std::max(0.0, -ck));
        }
      }
    }
  });
}

CheckResult check_sigma_products() {
  return run_check("qseries", "sigma_product_moments_relative", 1e-9, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      const auto sigma = sigma_abgamma(p, sigma_default_gamma(p));
      const auto s = qbinom_moments(p);
      for (std::size_t n = 0; n <= 6; ++n) {
        observe(std::abs(moment(sigma, n).value.real() - s[n]) / s[n]);
      }
    }
  });
}

CheckResult check_sigma_t_transform() {
  return run_check("qseries", "sigma_t_transform_relative", 1e-9, [](auto observe, auto&) {
    for (const auto& p : q_grid()) {
      const auto sigma = sigma_abgamma(p, sigma_default_gamma(p));
      const auto t = t_transform(qbeta_moments(p));
      for (std::size_t n = 0; n <= 6; ++n) {
        observe(std::abs(moment(sigma, n).value.real() - t[n]) / t[n]);
      }
    }
  });
}

CheckResult check_hermite_positivity() {
  CheckResult r = run_check("hermite", "generating_function_positivity", 0.0, [](auto observe, auto& detail) {
    const auto scan = positivity_scan(grid_range(-0.95, 0.95, 0.05), grid_range(-10.0, 10.0, 0.25), 1e-10);
    detail = "min G = " + fmt(scan.min_value) + " at (t, x) = (" + fmt(scan.argmin_t) + ", " +
             fmt(scan.argmin_x) + "); min certified lower bound = " + fmt(scan.min_certified);
    observe(scan.all_positive ? 0.0 : std::max(-scan.min_certified, std::numeric_limits<double>::min()));
  });
  return r;
}

CheckResult check_szasz() {
  return run_check("hermite", "szasz_bound_excess", 1e-12, [](auto observe, auto&) {
    const auto xs = grid_range(-6.0, 6.0, 0.1);
    for (std::size_t n = 0; n <= 200; ++n) {
      for (double x : xs) {
        observe(std::abs(hermite_h(n, x)) * std::exp(-0.5 * x * x) - 1.0);
      }
    }
  });
}

CheckResult check_hermite_generating() {
  return run_check("hermite", "hermite_generating_function", 1e-9, [](auto observe, auto&) {
    for (double x : grid_range(-3.0, 3.0, 0.25)) {
      for (double z : grid_range(-0.8, 0.8, 0.1)) {
        double acc = 0.0;
        double zk_over_fact = 1.0;
        for (std::size_t k = 0; k <= 60; ++k) {
          if (k > 0) {
            zk_over_fact *= z / static_cast<double>(k);
          }
          acc += hermite_H(k, x) * zk_over_fact;
        }
        observe(std::abs(acc - std::exp(2.0 * x * z - z * z)));
      }
    }
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hankel", "bernstein-rep", "qseries", "semigroup", "hermite", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "hankel") {
    known = true;
    out.push_back(check_hankel_positivity(opts));
    out.push_back(check_generated_sequences(opts));
    out.push_back(check_carleman());
  }
  if (all || suite == "bernstein-rep") {
    known = true;
    out.push_back(check_representation_identity());
    out.push_back(check_psi_consistency());
    out.push_back(check_psi_endpoints());
  }
  if (all || suite == "qseries") {
    known = true;
    out.push_back(check_qbeta_moment_identity());
    out.push_back(check_qbeta_power_moments());
    out.push_back(check_nu_mass());
    out.push_back(check_qbinomial());
    out.push_back(check_laplace());
    out.push_back(check_qbeta_mellin());
    out.push_back(check_hp_nonnegative());
    out.push_back(check_sigma_products());
    out.push_back(check_sigma_t_transform());
  }
  if (all || suite == "semigroup") {
    known = true;
    out.push_back(check_gamma_beta_factorization());
    out.push_back(check_vc_family());
    out.push_back(check_tau_semigroup());
    out.push_back(check_tau_semigroup_grid());
    out.push_back(check_mu_semigroup());
  }
  if (all || suite == "hermite") {
    known = true;
    out.push_back(check_hermite_positivity());
    out.push_back(check_szasz());
    out.push_back(check_hermite_generating());
  }
  if (!known) {
    throw UsageError("unknown verify suite '" + suite + "'");
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

nlohmann::ordered_json report_json(const std::string& suite, const VerifyOptions& opts,
                                   const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["hankel_tol"] = opts.hankel_tol;
  j["passed"] = all_passed(results);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["suite"] = r.suite;
    c["name"] = r.name;
    c["passed"] = r.passed;
    c["max_residual"] = std::isfinite(r.max_residual) ? nlohmann::ordered_json(r.max_residual)
                                                      : nlohmann::ordered_json("inf");
    c["threshold"] = r.threshold;
    if (!r.detail.empty()) {
      c["detail"] = r.detail;
    }
    j["checks"].push_back(std::move(c));
  }
  return j;
}

}  // namespace momentforge
