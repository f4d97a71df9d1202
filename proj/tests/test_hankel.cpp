#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "momentforge/error.hpp"
#include "momentforge/hankel.hpp"

using namespace momentforge;

namespace {

// Smallest eigenvalue by cyclic Jacobi rotations; independent of the factorization.
double min_eigenvalue(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off += a[p][q] * a[p][q];
      }
    }
    if (off < 1e-30) {
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) {
          continue;
        }
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double m = a[0][0];
  for (std::size_t i = 1; i < n; ++i) {
    m = std::min(m, a[i][i]);
  }
  return m;
}

std::vector<std::vector<double>> hankel(const std::vector<double>& s, std::size_t n, std::size_t shift) {
  std::vector<std::vector<double>> h(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h[i][j] = s[i + j + shift];
    }
  }
  return h;
}

}  // namespace

TEST_CASE("moments of a positive measure pass at every order") {
  // Exp(1): s_n = n!, log-normal: exp(n^2/2) (indeterminate but still Stieltjes).
  auto fact = MomentSequence::from_log([](std::size_t n) { return std::lgamma(n + 1.0); });
  auto logn = MomentSequence::from_log([](std::size_t n) { return 0.5 * double(n) * double(n); });
  for (std::size_t N = 1; N <= 10; ++N) {
    CHECK(stieltjes_check(fact, N).psd());
    CHECK(stieltjes_check(logn, N).psd());
  }
}

TEST_CASE("failure on (1,2,3,4) reports step, matrix and eigenvalue estimate") {
  auto s = MomentSequence::from_values({1.0, 2.0, 3.0, 4.0});
  auto v = stieltjes_check(s, 1);
  REQUIRE_FALSE(v.psd());
  const auto& f = std::get<FailedAt>(v.status);
  CHECK(f.order == 1);
  CHECK(f.matrix == HankelMatrix::H0);
  CHECK(f.min_eigenvalue_estimate < 0.0);
  CHECK(f.min_eigenvalue_estimate == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.scaled_pivot < -v.tolerance);
  // Oracle: det H0 = -1 so H0 has a negative eigenvalue.
  CHECK(min_eigenvalue(hankel({1, 2, 3, 4}, 2, 0)) < 0.0);
}

TEST_CASE("H1 failure when H0 is fine") {
  // Two-point measure at -1 and 2: H0 positive definite, H1 indefinite.
  std::vector<double> s(4);
  for (std::size_t n = 0; n < 4; ++n) {
    s[n] = 0.5 * std::pow(-1.0, double(n)) + 0.5 * std::pow(2.0, double(n));
  }
  auto v = stieltjes_check(MomentSequence::from_values(s), 1);
  REQUIRE_FALSE(v.psd());
  CHECK(std::get<FailedAt>(v.status).matrix == HankelMatrix::H1);
}

TEST_CASE("verdict agrees with the Jacobi eigenvalue oracle on random sequences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> loc(0.05, 3.0);
  std::uniform_real_distribution<double> perturb(-0.3, 0.3);
  int disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(8, 0.0);
    for (int k = 0; k < 5; ++k) {
      const double x = loc(rng);
      for (std::size_t n = 0; n < 8; ++n) {
        s[n] += 0.2 * std::pow(x, double(n));
      }
    }
    if (trial % 2 == 1) {
      s[3] *= 1.0 + perturb(rng);
    }
    auto v = stieltjes_check(MomentSequence::from_values(s), 3, 1e-9);
    // Compare with the eigenvalues of the diagonally scaled matrices.
    bool oracle_psd = true;
    for (std::size_t shift : {0u, 1u}) {
      auto h = hankel(s, 4, shift);
      std::vector<double> d(4);
      for (std::size_t i = 0; i < 4; ++i) {
        d[i] = std::sqrt(h[i][i]);
      }
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          h[i][j] /= d[i] * d[j];
        }
      }
      const double lmin = min_eigenvalue(h);
      if (std::abs(lmin) < 1e-6) {
        oracle_psd = v.psd();  // too close to call
      } else if (lmin < 0.0) {
        oracle_psd = false;
      }
    }
    disagreements += oracle_psd != v.psd();
  }
  CHECK(disagreements == 0);
}

TEST_CASE("dirac at zero and range handling") {
  CHECK(stieltjes_check(MomentSequence::dirac_at_zero(1.0), 4).psd());
  auto huge = MomentSequence::from_log([](std::size_t n) { return 400.0 * double(n) * double(n); });
  CHECK(stieltjes_check(huge, 6).psd());
  auto bad = MomentSequence::from_log([](std::size_t n) { return n == 3 ? NAN : 0.0; });
  CHECK_THROWS_AS(stieltjes_check(bad, 2), RangeError);
}

TEST_CASE("carleman patterns") {
  // Exp(1): t_n ~ (n!)^{-1/(2n)} ~ sqrt(e/n), divergent.
  auto fact = MomentSequence::from_log([](std::size_t n) { return std::lgamma(n + 1.0); });
  auto d = carleman_diagnostic(fact, 64);
  CHECK(d.verdict == CarlemanVerdict::DivergentPattern);
  CHECK(d.partial_sums.size() == 64);
  CHECK(d.partial_sum == doctest::Approx(d.partial_sums.back()));
  // Log-normal: t_n = exp(-n/4), convergent.
  auto logn = MomentSequence::from_log([](std::size_t n) { return 0.5 * double(n) * double(n); });
  CHECK(carleman_diagnostic(logn, 64).verdict == CarlemanVerdict::ConvergentPattern);
  // Exact partial sum oracle: sum_{n=1}^{8} exp(-n/4).
  double oracle = 0.0;
  for (int n = 1; n <= 8; ++n) {
    oracle += std::exp(-n / 4.0);
  }
  CHECK(carleman_diagnostic(logn, 8).partial_sum == doctest::Approx(oracle).epsilon(1e-14));
  CHECK_THROWS_AS(carleman_diagnostic(MomentSequence::dirac_at_zero(), 8), DomainError);
}

TEST_CASE("trichotomy") {
  const std::vector<double> pos = {1.0, 0.5, 0.3, 0.2};
  const std::vector<double> sym = {1.0, 0.0, 0.3, 1e-18, 0.2};
  const std::vector<double> dirac = {1.0, 0.0, 0.0, 0.0};
  const std::vector<double> bad = {1.0, 0.5, 0.0, 0.2};
  CHECK(trichotomy_classify(pos, 3) == Trichotomy::AllPositive);
  CHECK(trichotomy_classify(sym, 4) == Trichotomy::SymmetricZeroOdd);
  CHECK(trichotomy_classify(dirac, 3) == Trichotomy::DiracAtZero);
  CHECK_THROWS_AS(trichotomy_classify(bad, 3), InconsistencyError);
  CHECK(trichotomy_classify(MomentSequence::dirac_at_zero(), 5) == Trichotomy::DiracAtZero);
}

TEST_CASE("powers of moment sequences") {
  auto fact = MomentSequence::from_log([](std::size_t n) { return std::lgamma(n + 1.0); });
  for (double c : {0.1, 0.5, 2.0, 7.5}) {
    auto p = power_sequence(fact, c);
    CHECK(p[4] == doctest::Approx(std::pow(24.0, c)).epsilon(1e-13));
    CHECK(stieltjes_check(p, 6).psd());
  }
  auto d = power_sequence(MomentSequence::dirac_at_zero(4.0), 0.5);
  CHECK(d.is_dirac_at_zero());
  CHECK(d[0] == 2.0);
  CHECK_THROWS_AS(power_sequence(fact, 0.0), DomainError);
}
