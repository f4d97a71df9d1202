#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "momentforge/error.hpp"
#include "momentforge/hermite.hpp"

using namespace momentforge;

TEST_CASE("Hermite values") {
  CHECK(hermite_H(0, 2.5) == 1.0);
  CHECK(hermite_H(2, 1.0) == 2.0);
  CHECK(hermite_H(3, 0.5) == doctest::Approx(8 * 0.125 - 12 * 0.5).epsilon(1e-15));
  CHECK(hermite_h(0, 1.0) == 1.0);
  CHECK(hermite_h(1, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (std::size_t n = 0; n <= 20; ++n) {
    const double norm = std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
    CHECK(hermite_h(n, 0.7) == doctest::Approx(hermite_H(n, 0.7) / norm).epsilon(1e-12));
    CHECK(hermite_eval(n, 0.7).H == doctest::Approx(hermite_H(n, 0.7)).epsilon(1e-12));
  }
  CHECK(std::abs(hermite_h(20, 3.0)) <= std::exp(4.5));
  CHECK_THROWS_AS(hermite_H(400, 20.0), RangeError);
  CHECK(std::isfinite(hermite_h(400, 20.0)));
}

TEST_CASE("Hermite generating function") {
  double s = 0.0;
  double fact = 1.0;
  for (int k = 0; k <= 30; ++k) {
    if (k > 0) {
      fact *= k;
    }
    s += hermite_H(k, 1.0) * std::pow(0.3, k) / fact;
  }
  CHECK(std::abs(s - std::exp(0.51)) <= 1e-10);
  double worst = 0.0;
  for (double x = -3.0; x <= 3.0 + 1e-9; x += 0.25) {
    for (double z = -0.8; z <= 0.8 + 1e-9; z += 0.1) {
      double acc = 0.0;
      double f = 1.0;
      for (int k = 0; k <= 60; ++k) {
        if (k > 0) {
          f *= k;
        }
        acc += hermite_H(k, x) * std::pow(z, k) / f;
      }
      worst = std::max(worst, std::abs(acc - std::exp(2 * x * z - z * z)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("Szasz bound") {
  for (std::size_t n = 0; n <= 200; ++n) {
    for (int i = -60; i <= 60; ++i) {
      CHECK(szasz_holds(n, 0.1 * i));
    }
  }
}

TEST_CASE("orthonormality") {
  // Trapezoid on [-12, 12].
  const double h = 0.01;
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::size_t m = 0; m <= 8; ++m) {
      double acc = 0.0;
      for (int i = -1200; i <= 1200; ++i) {
        const double x = h * i;
        acc += hermite_h(n, x) * hermite_h(m, x) * std::exp(-x * x);
      }
      acc *= h / std::sqrt(std::numbers::pi);
      CHECK(std::abs(acc - (n == m ? 1.0 : 0.0)) <= 1e-8);
    }
  }
}

TEST_CASE("G(t,x)") {
  auto g0 = generating_G(0.0, 1.7);
  CHECK(g0.value == 1.0);
  CHECK(g0.terms_used == 1);
  CHECK(g0.tail_bound == 0.0);
  // Only even orders survive at x = 0.
  double direct = 0.0;
  for (std::size_t k = 0; k < 200; k += 2) {
    direct += hermite_h(k, 0.0) * std::pow(0.5, k);
  }
  auto g = generating_G(0.5, 0.0, 1e-12);
  CHECK(std::abs(g.value - direct) <= 1e-12);
  CHECK(g.tail_bound <= 1e-12);
  CHECK(g.tail_bound == doctest::Approx(std::pow(0.5, g.terms_used) / 0.5).epsilon(1e-12));
  CHECK(generating_G(0.9, -5.0).certified_lower() > 0.0);
  CHECK(generating_G(-0.9, 8.0).certified_lower() > 0.0);
  // Values at the corners of the scan grid (50-digit reference sums).
  auto corner = generating_G(-0.95, 10.0);
  CHECK(corner.value == doctest::Approx(0.02721913246).epsilon(1e-9));
  CHECK(corner.certified_lower() > 0.0);
  CHECK(generating_G(0.95, 10.0).value == doctest::Approx(1.724651534e21).epsilon(1e-9));
  CHECK(generating_G(-0.9, 8.0).value == doctest::Approx(0.03789019202).epsilon(1e-9));
  CHECK_THROWS_AS(generating_G(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(generating_G(0.9999, 30.0, 1e-10, 1000), BudgetError);
}

TEST_CASE("positivity scan") {
  auto trivial = positivity_scan({0.0}, {0.0});
  CHECK(trivial.min_value == 1.0);
  CHECK(trivial.all_positive);
  auto ts = grid_range(-0.95, 0.95, 0.05);
  auto xs = grid_range(-10.0, 10.0, 0.25);
  CHECK(ts.size() == 39);
  CHECK(xs.size() == 81);
  CHECK(ts[19] == 0.0);
  auto scan = positivity_scan(ts, xs, 1e-10);
  CHECK(scan.all_positive);
  CHECK(scan.min_certified > 0.0);
  for (const auto& p : scan.points) {
    CHECK(p.tail_bound <= 1e-10);
  }
}
