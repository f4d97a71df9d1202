#include "momentforge/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "momentforge/error.hpp"

namespace momentforge {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Terms of G needed so that e^{x^2/2} |t|^{N+1} / (1 - |t|) <= tol.
std::size_t terms_needed(double t, double x, double tol) {
  const double at = std::abs(t);
  if (at == 0.0) {
    return 1;
  }
  const double log_target = std::log(tol) + std::log1p(-at) - 0.5 * x * x;
  const double n1 = std::ceil(log_target / std::log(at));
  return static_cast<std::size_t>(std::max(n1, 1.0));
}

}  // namespace

double hermite_H(std::size_t n, double x) {
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  double cur = 2.0 * x;
  for (std::size_t k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
    if (!std::isfinite(cur)) {
      throw RangeError("hermite_H: H_" + std::to_string(n) + " overflows; use hermite_h");
    }
  }
  return cur;
}

double hermite_h(std::size_t n, double x) {
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  const double s2x = std::sqrt(2.0) * x;
  double cur = s2x;
  for (std::size_t k = 1; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const double next = (s2x * cur - std::sqrt(dk) * prev) / std::sqrt(dk + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

HermiteEval hermite_eval(std::size_t n, double x) {
  HermiteEval out;
  out.n = n;
  out.x = x;
  out.h = hermite_h(n, x);
  const double dn = static_cast<double>(n);
  const double log_norm = 0.5 * (dn * std::log(2.0) + std::lgamma(dn + 1.0));
  if (out.h == 0.0) {
    out.H = 0.0;
  } else {
    const double mag = std::exp(std::log(std::abs(out.h)) + log_norm);
    out.H = std::copysign(mag, out.h);
  }
  return out;
}

bool szasz_holds(std::size_t n, double x) {
  return std::abs(hermite_h(n, x)) <= std::exp(0.5 * x * x) * (1.0 + 1e-12);
}

GenFunValue generating_G(double t, double x, double tol, std::size_t max_terms) {
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("generating_G: need |t| < 1");
  }
  if (!(tol > 0.0) || !std::isfinite(x)) {
    throw DomainError("generating_G: need tol > 0 and finite x");
  }
  const std::size_t N1 = terms_needed(t, x, tol);
  if (N1 > max_terms) {
    throw BudgetError("generating_G: " + std::to_string(N1) + " terms needed, budget " +
                      std::to_string(max_terms));
  }
  GenFunValue out;
  out.t = t;
  out.x = x;
  out.terms_used = N1;
  const double at = std::abs(t);
  out.tail_bound =
      at == 0.0 ? 0.0
                : std::exp(0.5 * x * x + static_cast<double>(N1) * std::log(at) - std::log1p(-at));

  const Big bt(t);
  const Big s2x = boost::multiprecision::sqrt(Big(2)) * Big(x);
  Big prev = 1;
  Big cur = s2x;
  Big tk = 1;
  Big sum = 1;
  Big abs_sum = 1;
  for (std::size_t k = 1; k < N1; ++k) {
    tk *= bt;
    const Big term = cur * tk;
    sum += term;
    abs_sum += abs(term);
    const Big next = (s2x * cur - boost::multiprecision::sqrt(Big(k)) * prev) /
                     boost::multiprecision::sqrt(Big(k + 1));
    prev = cur;
    cur = next;
  }
  // Each term carries at most O(k) relative rounding from the recurrence.
  const double unit = std::numeric_limits<Big>::epsilon().convert_to<double>();
  const double n = static_cast<double>(N1);
  out.value = sum.convert_to<double>();
  out.rounding_bound = 4.0 * n * n * unit * abs_sum.convert_to<double>() +
                       std::numeric_limits<double>::epsilon() * std::abs(out.value);
  return out;
}

PositivityScan positivity_scan(const std::vector<double>& t_grid, const std::vector<double>& x_grid,
                               double tol) {
  if (t_grid.empty() || x_grid.empty()) {
    throw PreconditionError("positivity_scan: grids must be nonempty");
  }
  PositivityScan out;
  out.points.resize(t_grid.size() * x_grid.size());
  const std::size_t total = out.points.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < total; i += workers) {
          out.points[i] = generating_G(t_grid[i / x_grid.size()], x_grid[i % x_grid.size()], tol);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  out.min_value = std::numeric_limits<double>::infinity();
  out.min_certified = std::numeric_limits<double>::infinity();
  for (const auto& g : out.points) {
    if (g.value < out.min_value) {
      out.min_value = g.value;
      out.argmin_t = g.t;
      out.argmin_x = g.x;
    }
    out.min_certified = std::min(out.min_certified, g.certified_lower());
  }
  out.all_positive = out.min_certified > 0.0;
  return out;
}

std::vector<double> grid_range(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw PreconditionError("grid_range: need step > 0 and hi >= lo");
  }
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + step * 1e-6) {
      break;
    }
    out.push_back(std::min(std::round(v * 1e12) / 1e12, hi));
  }
  return out;
}

}  // namespace momentforge
