#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "momentforge/verify.hpp"

namespace mf = momentforge;

namespace {

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  status = pclose(pipe);
  return out;
}

struct Criterion {
  std::string label;
  std::function<std::vector<mf::CheckResult>()> checks;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", [] { return std::vector{mf::check_representation_identity()}; }},
      {"AC2", [] { return std::vector{mf::check_psi_consistency(), mf::check_psi_endpoints()}; }},
      {"AC3", [] { return std::vector{mf::check_hankel_positivity()}; }},
      {"AC4", [] { return std::vector{mf::check_qbeta_power_moments()}; }},
      {"AC5",
       [] {
         return std::vector{mf::check_laplace(), mf::check_qbeta_mellin(), mf::check_gamma_beta_factorization()};
       }},
      {"AC6", [] { return std::vector{mf::check_vc_family()}; }},
      {"AC7",
       [] {
         return std::vector{mf::check_tau_semigroup(), mf::check_tau_semigroup_grid(), mf::check_mu_semigroup()};
       }},
      {"AC8",
       [] { return std::vector{mf::check_hp_nonnegative(), mf::check_sigma_products(), mf::check_sigma_t_transform()}; }},
      {"AC9",
       [] {
         const auto start = std::chrono::steady_clock::now();
         std::vector out{mf::check_hermite_positivity(), mf::check_szasz(), mf::check_hermite_generating()};
         const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
         mf::CheckResult runtime;
         runtime.suite = "hermite";
         runtime.name = "runtime_seconds";
         runtime.max_residual = secs;
         runtime.threshold = 60.0;
         runtime.passed = secs <= 60.0;
         out.push_back(runtime);
         return out;
       }},
      {"AC10", [] { return std::vector{mf::check_carleman()}; }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto results = c.checks();
    const bool ok = mf::all_passed(results);
    std::string line = c.label + (ok ? " PASS" : " FAIL");
    for (const auto& r : results) {
      line += " " + r.name + "=" + g(r.max_residual) + (r.passed ? "<=" : ">") + g(r.threshold);
    }
    std::printf("%s\n", line.c_str());
    failures += ok ? 0 : 1;
  }

  const std::string cmd = std::string("\"") + MOMENTFORGE_CLI_PATH + "\" verify all 2>&1";
  int s1 = 0;
  int s2 = 0;
  const std::string r1 = run_command(cmd, s1);
  const std::string r2 = run_command(cmd, s2);
  const bool same = s1 == 0 && s2 == 0 && !r1.empty() && r1 == r2;
  std::printf("AC11 %s verify_all_runs=2 report_bytes=%zu identical=%s exit_codes=%d,%d\n", same ? "PASS" : "FAIL",
              r1.size(), r1 == r2 ? "true" : "false", s1, s2);
  failures += same ? 0 : 1;
  return failures == 0 ? 0 : 1;
}
