#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace momentforge {

/// One named identity check: passes iff max_residual <= threshold.
struct CheckResult {
  std::string suite;
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Relative tolerance handed to stieltjes_check.
  double hankel_tol = 1e-9;
};

/// log s_n from the Levy-Khinchin representation against sum_k log f(alpha + k beta).
CheckResult check_representation_identity();
/// psi(n) + log s_n over the same sweep.
CheckResult check_psi_consistency();
/// psi(0) = 0 and psi(1) = -log f(alpha).
CheckResult check_psi_endpoints();
/// Every generated sequence and its powers pass stieltjes_check.
CheckResult check_hankel_positivity(const VerifyOptions& opts = {});
/// Moment sequences of the library at exponents {0.5, 1, 2, 3} pass stieltjes_check at N = 8.
CheckResult check_generated_sequences(const VerifyOptions& opts = {});
/// Carleman verdicts of (n!)^1, (n!)^3 and the constant sequence.
CheckResult check_carleman();
/// moment(mu(a,b;q), n) against (a;q)_n / (b;q)_n.
CheckResult check_qbeta_moment_identity();
/// moment(mu_c, n) against ((a;q)_n / (b;q)_n)^c.
CheckResult check_qbeta_power_moments();
/// Mass of nu_a against -log (a;q)_inf.
CheckResult check_nu_mass();
/// Series and product sides of the q-binomial theorem.
CheckResult check_qbinomial();
/// Atomic Laplace transform of tau_1 against its product form.
CheckResult check_laplace();
/// Closed-form q-Beta Mellin transform at z = n against atomic moments.
CheckResult check_qbeta_mellin();
/// Gamma(b) Mellin times Beta(a,b) Mellin against Gamma(a) Mellin.
CheckResult check_gamma_beta_factorization();
/// Quadrature moments of v_c against q^{-c n (n+1)/2}.
CheckResult check_vc_family();
/// tau_c + tau_d against tau_{c+d} at (a, b, q) = (0.5, 0.25, 0.5).
CheckResult check_tau_semigroup();
/// The same over the (a, b, q) grid, residuals divided by max(1, moment).
CheckResult check_tau_semigroup_grid();
/// mu_c * mu_d against mu_{c+d}.
CheckResult check_mu_semigroup();
/// c_k(p, q) >= -1e-14 for k <= 50.
CheckResult check_hp_nonnegative();
/// Moments of sigma_{a,b,gamma} against the product formula.
CheckResult check_sigma_products();
/// Moments of sigma_{a,b,gamma} against t_transform((a;q)_n / (b;q)_n).
CheckResult check_sigma_t_transform();
/// Certified positivity of G(t,x) on the scan grid.
CheckResult check_hermite_positivity();
/// |h_n(x)| <= e^{x^2/2}.
CheckResult check_szasz();
/// Hermite generating function against e^{2xz - z^2}.
CheckResult check_hermite_generating();

/// hankel, bernstein-rep, qseries, semigroup, hermite, all.
const std::vector<std::string>& suite_names();

/// Runs a named suite; UsageError for unknown names.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

/// Deterministic report: suite, options, overall flag and one entry per check.
nlohmann::ordered_json report_json(const std::string& suite, const VerifyOptions& opts,
                                   const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace momentforge
