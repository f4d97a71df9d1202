#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "momentforge/bernstein.hpp"
#include "momentforge/error.hpp"
#include "momentforge/hankel.hpp"
#include "momentforge/special.hpp"

using namespace momentforge;
using cd = std::complex<double>;

namespace {

std::vector<BernsteinFunction> catalog() {
  return {BernsteinFunction::affine(1.0),        BernsteinFunction::affine(2.0),
          BernsteinFunction::ratio(1.0, 2.0),    BernsteinFunction::ratio(0.5, 3.0),
          BernsteinFunction::qratio(0.5, 0.25, 0.5), BernsteinFunction::qratio(0.7, 0.0, 0.3),
          BernsteinFunction::linear(),           BernsteinFunction::mobius()};
}

// Independent product oracle for log s_n.
double log_product(const BernsteinFunction& f, double alpha, double beta, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += std::log(f(alpha + static_cast<double>(k) * beta));
  }
  return acc;
}

}  // namespace

TEST_CASE("closed forms") {
  CHECK(BernsteinFunction::linear()(2.0) == 2.0);
  CHECK(BernsteinFunction::ratio(1.0, 2.0)(0.0) == 0.5);
  CHECK(BernsteinFunction::qratio(0.5, 0.25, 0.5)(1.0) == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(BernsteinFunction::mobius()(1.0) == 0.5);
  CHECK(BernsteinFunction::power_tower()(0.0) == 1.0);
  CHECK(BernsteinFunction::power_tower()(1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(BernsteinFunction::ratio(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(BernsteinFunction::qratio(0.25, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(BernsteinFunction::linear()(-1.0), DomainError);
}

TEST_CASE("levy representation reproduces the closed form") {
  for (const auto& f : catalog()) {
    for (double s : {0.0, 0.3, 2.0, 7.0, 40.0}) {
      CHECK(eval_via_levy(f, s) == doctest::Approx(f(s)).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(eval_via_levy(BernsteinFunction::power_tower(), 1.0), UnsupportedError);
}

TEST_CASE("analytic derivative agrees with central differences") {
  auto all = catalog();
  all.push_back(BernsteinFunction::power_tower());
  for (const auto& f : all) {
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      const double h = 1e-5;
      const double fd = (f(s + h) - f(s - h)) / (2.0 * h);
      CHECK(f.derivative(s) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("kappa satisfies f'/f = Laplace transform of kappa") {
  for (const auto& f : catalog()) {
    const Measure kappa = kappa_of(f);
    for (double s : {0.5, 1.0, 2.0, 5.0}) {
      auto lap = integrate<double>(kappa, [s](double x) { return std::exp(-s * x); });
      CHECK(std::abs(lap.value - f.derivative(s) / f(s)) <= 1e-10);
    }
  }
  // Affine(1) at s = 1 and Ratio(1,2) at s = 0.
  auto k1 = kappa_of(BernsteinFunction::affine(1.0));
  CHECK(integrate<double>(k1, [](double x) { return std::exp(-x); }).value == doctest::Approx(0.5).epsilon(1e-13));
  auto k2 = kappa_of(BernsteinFunction::ratio(1.0, 2.0));
  CHECK(total_mass(k2).real() == doctest::Approx(0.5).epsilon(1e-13));
  // First QRatio atom has mass (a - b) log(1/q).
  const Measure qk = kappa_of(BernsteinFunction::qratio(0.5, 0.25, 0.5));
  const auto& q = std::get<AtomicMeasure>(qk);
  CHECK(q.atoms()[0].location == doctest::Approx(std::log(2.0)));
  CHECK(q.atoms()[0].weight == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-15));
  CHECK(q.zero_mass() == 0.0);
  CHECK_THROWS_AS(kappa_of(BernsteinFunction::power_tower()), UnsupportedError);
}

TEST_CASE("power moments") {
  auto fact = power_moments(BernsteinFunction::affine(1.0), 0.0, 1.0);
  CHECK(fact[3] == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(fact.log_value(100) == doctest::Approx(std::lgamma(101.0)).epsilon(1e-14));
  auto r = power_moments(BernsteinFunction::ratio(1.0, 2.0), 0.0, 1.0);
  CHECK(r[3] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(power_moments(BernsteinFunction::affine(2.0), 0.0, 1.0)[2] == doctest::Approx(6.0));
  // Telescoping: prod_{k=1}^{n} (k+1)^{k+1} / k^k = (n+1)^{n+1}.
  auto tower = power_moments(BernsteinFunction::power_tower(), 1.0, 1.0);
  for (std::size_t n = 1; n <= 12; ++n) {
    const double dn = static_cast<double>(n);
    CHECK(tower.log_value(n) == doctest::Approx((dn + 1.0) * std::log(dn + 1.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(power_moments(BernsteinFunction::linear(), 0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(power_moments(BernsteinFunction::mobius(), 0.0, 1.0), PreconditionError);
}

TEST_CASE("upper bound s_n <= f(alpha) f(beta)^{n-1} (1 + alpha/beta)_{n-1}") {
  for (const auto& f : catalog()) {
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}}) {
      if (!(f(alpha) > 0.0)) {
        continue;
      }
      auto s = power_moments(f, alpha, beta);
      for (std::size_t n = 1; n <= 15; ++n) {
        double log_bound = std::log(f(alpha)) + static_cast<double>(n - 1) * std::log(f(beta));
        for (std::size_t k = 0; k + 1 < n; ++k) {
          log_bound += std::log(1.0 + alpha / beta + static_cast<double>(k));
        }
        CHECK(s.log_value(n) <= log_bound + 1e-12);
      }
    }
  }
}

TEST_CASE("sigma lives on (0,1) and matches the substitution formula") {
  const Measure qs = sigma_of(BernsteinFunction::qratio(0.5, 0.25, 0.5), 0.0, 1.0);
  const auto& q = std::get<AtomicMeasure>(qs);
  CHECK(q.atoms().front().location > 0.0);
  CHECK(q.atoms().back().location == doctest::Approx(0.5));  // k = 1 atom at q
  CHECK(q.atoms().back().location < 1.0);
  // Linear, alpha = beta = 1: sigma(y) = 1 / (x (1 - y)), x = -log y.
  const Measure ls = sigma_of(BernsteinFunction::linear(), 1.0, 1.0);
  const auto& lin = std::get<DensityMeasure>(ls);
  for (double y : {0.01, 0.3, 0.9, 0.999}) {
    const double x = -std::log(y);
    CHECK(lin.density(y) == doctest::Approx(1.0 / (x * (1.0 - y))).epsilon(1e-13));
  }
  CHECK(lin.lo() == 0.0);
  CHECK(lin.hi() == 1.0);
  // int (1-x)^2 dsigma is finite for Affine(1).
  const Measure as = sigma_of(BernsteinFunction::affine(1.0), 0.0, 1.0);
  const auto& aff = std::get<DensityMeasure>(as);
  auto m = aff.integrate<double>([](double y, double ld) { return std::exp(ld + 2.0 * std::log1p(-y)); });
  CHECK(std::isfinite(m.value));
  CHECK(m.value > 0.0);
  CHECK_THROWS_AS(sigma_of(BernsteinFunction::power_tower(), 1.0, 1.0), UnsupportedError);
  CHECK_THROWS_AS(sigma_of(BernsteinFunction::linear(), 0.0, 1.0), PreconditionError);
}

TEST_CASE("representation identity and psi consistency") {
  for (const auto& f : catalog()) {
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}}) {
      if (!(f(alpha) > 0.0)) {
        continue;
      }
      CHECK(log_moment_via_rep(f, alpha, beta, 0) == 0.0);
      CHECK(log_moment_via_rep(f, alpha, beta, 1) == doctest::Approx(std::log(f(alpha))).epsilon(1e-15));
      CHECK(psi(f, alpha, beta, 0.0) == cd(0.0));
      CHECK(std::abs(psi(f, alpha, beta, 1.0) + std::log(f(alpha))) <= 1e-12);
      for (std::size_t n : {2u, 5u, 15u}) {
        const double oracle = log_product(f, alpha, beta, n);
        CHECK(std::abs(log_moment_via_rep(f, alpha, beta, n) - oracle) <= 1e-9);
        CHECK(std::abs(psi(f, alpha, beta, static_cast<double>(n)) + oracle) <= 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(psi(BernsteinFunction::affine(1.0), 0.0, 1.0, cd(-0.5, 0.0)), DomainError);
}

TEST_CASE("psi on the imaginary axis is a characteristic exponent") {
  // exp(-psi(iy)) is the Mellin transform of a probability: modulus at most 1,
  // and psi(-iy) = conj(psi(iy)) by symmetry of the real integrand.
  auto f = BernsteinFunction::affine(1.0);
  for (double y : {0.5, 2.0, 10.0}) {
    const cd p = psi(f, 0.0, 1.0, cd(0.0, y));
    CHECK(p.real() >= -1e-12);
    CHECK(std::abs(p - std::conj(psi(f, 0.0, 1.0, cd(0.0, -y)))) <= 1e-10);
  }
  // rho = Exp(1) for Affine(1), alpha = 0, beta = 1, so exp(-psi(z)) = Gamma(1 + z)
  // and |Gamma(1 + iy)|^2 = pi y / sinh(pi y).
  for (double y : {0.5, 2.0}) {
    const double pi = 3.14159265358979323846;
    CHECK(psi(f, 0.0, 1.0, cd(0.0, y)).real() ==
          doctest::Approx(-0.5 * std::log(pi * y / std::sinh(pi * y))).epsilon(1e-10));
  }
  const cd z(0.5, 1.5);
  CHECK(std::abs(std::exp(-psi(f, 0.0, 1.0, z)) - std::exp(log_gamma(1.0 + z))) <= 1e-10);
}

TEST_CASE("lk kernel and direct representations") {
  for (double x : {0.0, 0.25, 0.999, 1.0, 3.0}) {
    for (std::size_t n : {0u, 1u, 2u, 4u, 9u}) {
      const double direct = std::pow(x, double(n)) - 1.0 - double(n) * (x - 1.0);
      CHECK(lk_kernel(x, n) == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
  }
  LevyKhinchinRep drift{0.3, 0.0, AtomicMeasure{}};
  CHECK(lk_log_moment(drift, 4) == doctest::Approx(1.2));
  // b = log(1/q)/2 gives q^{-n^2/2}.
  const double q = 0.5;
  LevyKhinchinRep gauss{0.0, 0.5 * std::log(1.0 / q), AtomicMeasure{}};
  CHECK(std::exp(lk_log_moment(gauss, 3)) == doctest::Approx(std::pow(q, -4.5)).epsilon(1e-14));
  // Cross-module identity: rep of Affine(1) reproduces log n!.
  auto rep = levy_khinchin_rep(BernsteinFunction::affine(1.0), 0.0, 1.0);
  CHECK(rep.a == 0.0);
  CHECK(lk_log_moment(rep, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(lk_log_moment(rep, 7) == doctest::Approx(std::lgamma(8.0)).epsilon(1e-10));
  // Atom at zero contributes (n - 1) times its mass.
  LevyKhinchinRep zero{0.0, 0.0, AtomicMeasure({}, 0.5)};
  CHECK(lk_log_moment(zero, 5) == doctest::Approx(2.0));
}

TEST_CASE("power moments are Stieltjes for c in {0.5, 1, 2}") {
  for (const auto& f : catalog()) {
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {1.0, 1.0}, {0.5, 2.0}}) {
      if (!(f(alpha) > 0.0)) {
        continue;
      }
      for (double c : {0.5, 1.0, 2.0}) {
        CHECK(stieltjes_check(power_sequence(power_moments(f, alpha, beta), c), 6, 1e-9).psd());
      }
    }
  }
}
