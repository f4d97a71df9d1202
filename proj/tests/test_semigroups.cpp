#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "momentforge/error.hpp"
#include "momentforge/hankel.hpp"
#include "momentforge/semigroups.hpp"

using namespace momentforge;
using cd = std::complex<double>;

TEST_CASE("gamma family") {
  auto g1 = gamma_density({1.0, 1.0});
  CHECK(total_mass(Measure(g1)).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(moment(g1, 3).real() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(moment(gamma_density({2.0, 1.0}), 2).real() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(std::abs(mellin(g1, cd(0.5, 0.0)).value - std::sqrt(std::numbers::pi) / 2.0) < 1e-12);
  CHECK(gamma_mellin({1.0, 1.0}, 0.0) == cd(1.0));
  CHECK(std::abs(gamma_mellin({1.0, 1.0}, 3.0) - 6.0) < 1e-12);
  CHECK(std::abs(gamma_mellin({1.0, 2.0}, 3.0) - 36.0) < 1e-11);
  CHECK_THROWS_AS(gamma_mellin({1.0, 1.0}, -1.0), DomainError);
  CHECK_THROWS_AS(gamma_density({1.0, 2.0}), UnsupportedError);
  // Small shape parameter: integrable singularity at 0.
  auto g = gamma_density({0.3, 1.0});
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(moment(g, n).real() == doctest::Approx(std::exp(std::lgamma(0.3 + n) - std::lgamma(0.3))).epsilon(1e-8));
  }
}

TEST_CASE("beta family and the Gamma-Beta factorization") {
  auto b = beta_density({1.0, 2.0, 1.0});
  CHECK(total_mass(Measure(b)).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(moment(b, 1).real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(moment(b, 3).real() == doctest::Approx(0.25).epsilon(1e-13));
  for (int n = 0; n <= 6; ++n) {
    CHECK(std::abs(beta_mellin({1.0, 2.0, 1.0}, double(n)) - 1.0 / (n + 1.0)) < 1e-13);
  }
  for (auto [a, bb, c] : {std::tuple{1.0, 2.0, 1.0}, {0.5, 3.0, 2.0}, {2.5, 4.0, 0.3}}) {
    for (cd z : {cd(0.5, 0.0), cd(1.0, 0.0), cd(2.0, 1.0)}) {
      const cd lhs = gamma_mellin({bb, c}, z) * beta_mellin({a, bb, c}, z);
      CHECK(std::abs(lhs - gamma_mellin({a, c}, z)) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
  auto b2 = beta_density({0.4, 1.1, 1.0});
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(moment(b2, n).real() == doctest::Approx(beta_moments({0.4, 1.1, 1.0})[n]).epsilon(1e-8));
  }
  CHECK_THROWS_AS(beta_density({2.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("v_c family: quadrature against the closed form") {
  for (double q : {0.3, 0.5, 0.8}) {
    for (double c : {0.5, 1.0, 2.0}) {
      auto v = vc_density({q, c});
      for (std::size_t n = 0; n <= 6; ++n) {
        const double dn = static_cast<double>(n);
        const double oracle = std::pow(q, -c * dn * (dn + 1.0) / 2.0);
        CHECK(moment(v, n).real() == doctest::Approx(oracle).epsilon(1e-8));
      }
    }
  }
  CHECK(moment(vc_density({0.5, 1.0}), 2).real() == doctest::Approx(8.0).epsilon(1e-10));
  const cd z(0.7, -1.3);
  CHECK(std::abs(mellin(vc_density({0.5, 1.0}), z).value - vc_mellin({0.5, 1.0}, z)) < 1e-10);
  // Semigroup law: closed form exactly, quadrature level within 2e-8.
  for (cd w : {cd(0.5, 0.0), cd(2.0, 0.0), cd(1.0, 1.0)}) {
    const cd prod = vc_mellin({0.5, 0.7}, w) * vc_mellin({0.5, 1.3}, w);
    CHECK(std::abs(prod - vc_mellin({0.5, 2.0}, w)) <= 1e-14 * std::abs(prod));
    const cd quad = mellin(vc_density({0.5, 0.7}), w).value * mellin(vc_density({0.5, 1.3}), w).value;
    CHECK(std::abs(quad - vc_mellin({0.5, 2.0}, w)) <= 2e-8 * std::abs(prod));
  }
}

TEST_CASE("t-transform") {
  const double q = 0.5;
  auto geo = MomentSequence::from_log([q](std::size_t n) { return static_cast<double>(n) * std::log(q); });
  auto s = t_transform(geo);
  for (std::size_t n = 0; n <= 12; ++n) {
    const double dn = static_cast<double>(n);
    CHECK(s[n] == doctest::Approx(std::pow(q, -dn * (dn + 1.0) / 2.0)).epsilon(1e-13));
    CHECK(s[n] == doctest::Approx(vc_moments({q, 1.0})[n]).epsilon(1e-13));
  }
  CHECK(t_transform(geo).log_value(100) == doctest::Approx(-5050.0 * std::log(q)).epsilon(1e-14));
  auto ones = MomentSequence::from_log([](std::size_t) { return 0.0; });
  auto tt = t_transform(t_transform(ones));
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(std::abs(tt[n] - 1.0) <= 1e-12);
  }
  auto r = t_transform(beta_moments({1.0, 2.0, 1.0}));
  CHECK(r[2] == doctest::Approx(6.0).epsilon(1e-13));
  // Inverse round trip on a non-constant input.
  auto back = t_transform_inverse(t_transform(beta_moments({0.5, 3.0, 1.5})));
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(back[n] == doctest::Approx(beta_moments({0.5, 3.0, 1.5})[n]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(t_transform(MomentSequence::from_values({1.0, 0.5, 0.25})).value(3), RangeError);
  CHECK_THROWS_AS(t_transform(MomentSequence::dirac_at_zero()), DomainError);
  CHECK_THROWS_AS(t_transform(MomentSequence::from_values({2.0, 1.0})), PreconditionError);
}

TEST_CASE("semigroup moment sequences are Stieltjes") {
  for (double c : {0.5, 1.0, 2.0}) {
    CHECK(stieltjes_check(gamma_moments({1.5, c}), 6, 1e-9).psd());
    CHECK(stieltjes_check(beta_moments({0.5, 3.0, c}), 6, 1e-9).psd());
    CHECK(stieltjes_check(vc_moments({0.5, c}), 6, 1e-9).psd());
  }
}
