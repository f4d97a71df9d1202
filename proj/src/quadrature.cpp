#include "momentforge/quadrature.hpp"

#include <cstdlib>
#include <numbers>
#include <string>

namespace momentforge {

namespace {

GaussLegendreRule build_rule() {
  // Newton iteration on P_n with the three-term recurrence, in long double.
  GaussLegendreRule rule;
  constexpr std::size_t n = GaussLegendreRule::kPoints;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) {
        break;
      }
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(w);
    rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

QuadConfig quad_config_from_env(QuadConfig base) {
  const char* raw = std::getenv("MOMENTFORGE_QUAD_BUDGET");
  if (raw == nullptr) {
    return base;
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0 || raw[0] == '-') {
    throw PreconditionError(std::string("MOMENTFORGE_QUAD_BUDGET must be a positive integer, got '") + raw + "'");
  }
  base.max_panels = static_cast<std::size_t>(v);
  return base;
}

}  // namespace momentforge
