#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "momentforge/error.hpp"

namespace momentforge {

/// Tolerances and panel budget for adaptive Gauss-Legendre quadrature.
struct QuadConfig {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  std::size_t max_panels = std::size_t{1} << 14;
};

/// Reads MOMENTFORGE_QUAD_BUDGET (a positive integer panel count) on top of `base`.
QuadConfig quad_config_from_env(QuadConfig base = {});

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  std::size_t panels = 0;
};

/// Nodes and weights of the 20-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  static constexpr std::size_t kPoints = 20;
  std::array<double, kPoints> nodes{};
  std::array<double, kPoints> weights{};
};

const GaussLegendreRule& gauss_legendre_rule();

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
inline bool finite(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class T>
struct PanelRule {
  T value{};
  double abs_value = 0.0;
};

template <class T, class F>
PanelRule<T> apply_rule(F& f, double a, double b) {
  const auto& rule = gauss_legendre_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelRule<T> out;
  for (std::size_t i = 0; i < GaussLegendreRule::kPoints; ++i) {
    const T fx = f(mid + half * rule.nodes[i]);
    out.value += rule.weights[i] * fx;
    out.abs_value += rule.weights[i] * magnitude(fx);
  }
  out.value *= half;
  out.abs_value *= std::abs(half);
  return out;
}

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  PanelRule<T> left;
  PanelRule<T> right;
  double err = 0.0;
  T value{};
  double abs_value = 0.0;

  bool operator<(const Panel& other) const { return err < other.err; }
};

template <class T, class F>
Panel<T> make_panel(F& f, double a, double b, const PanelRule<T>& coarse) {
  Panel<T> p;
  p.a = a;
  p.b = b;
  const double mid = 0.5 * (a + b);
  p.left = apply_rule<T>(f, a, mid);
  p.right = apply_rule<T>(f, mid, b);
  p.value = p.left.value + p.right.value;
  p.abs_value = p.left.abs_value + p.right.abs_value;
  p.err = magnitude(p.value - coarse.value);
  if (!finite(p.value) || !std::isfinite(p.err)) {
    throw QuadratureFailure("non-finite integrand value", std::numeric_limits<double>::infinity());
  }
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Legendre quadrature of f over the finite interval [a, b].
///
/// Each panel is integrated with the 20-point rule and with the same rule on its
/// two halves; the difference is the panel error estimate. The panel with the
/// largest estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol*|I|) or the roundoff floor of the absolute integral.
/// Panels that can no longer be bisected stop refining but stay in abs_error.
/// `T` is `double` or `std::complex<double>`; complex integrands share nodes.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, double a, double b, const QuadConfig& cfg = {}) {
  QuadResult<T> result;
  if (a == b) {
    return result;
  }
  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::make_panel<T>(f, a, b, detail::apply_rule<T>(f, a, b)));

  T total = heap.top().value;
  double total_err = heap.top().err;
  double total_abs = heap.top().abs_value;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  auto target = [&] {
    return std::max({cfg.abs_tol, cfg.rel_tol * detail::magnitude(total), 64.0 * kEps * total_abs});
  };

  std::size_t panels = 1;
  // Panels too narrow to bisect in binary64 keep their error in the estimate.
  std::vector<detail::Panel<T>> frozen;
  double frozen_err = 0.0;
  while (total_err - frozen_err > target() && !heap.empty()) {
    if (panels >= cfg.max_panels) {
      throw QuadratureFailure("adaptive quadrature exhausted its panel budget", total_err);
    }
    detail::Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen_err += worst.err;
      frozen.push_back(std::move(worst));
      continue;
    }
    auto lo = detail::make_panel<T>(f, worst.a, mid, worst.left);
    auto hi = detail::make_panel<T>(f, mid, worst.b, worst.right);
    total += lo.value + hi.value - worst.value;
    total_err += lo.err + hi.err - worst.err;
    total_abs += lo.abs_value + hi.abs_value - worst.abs_value;
    heap.push(std::move(lo));
    heap.push(std::move(hi));
    ++panels;
    if (total_err - frozen_err <= target() || total_err < 0.0) {
      // Running sums drift; resum before deciding.
      total = T{};
      total_err = 0.0;
      total_abs = 0.0;
      frozen_err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().err;
        total_abs += copy.top().abs_value;
        copy.pop();
      }
      for (const auto& p : frozen) {
        total += p.value;
        total_err += p.err;
        total_abs += p.abs_value;
        frozen_err += p.err;
      }
    }
  }
  result.value = total;
  result.abs_error = total_err;
  result.panels = panels;
  return result;
}

}  // namespace momentforge
