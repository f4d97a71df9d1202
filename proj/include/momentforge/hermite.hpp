#pragma once

#include <cstddef>
#include <vector>

namespace momentforge {

/// Physicists' Hermite polynomial and its orthonormal counterpart at one point.
struct HermiteEval {
  std::size_t n = 0;
  double x = 0.0;
  /// H_n(x); +-inf once it leaves the binary64 range.
  double H = 1.0;
  /// h_n(x) = H_n(x) / sqrt(2^n n!).
  double h = 1.0;
};

/// H_n(x) from H_{n+1} = 2x H_n - 2n H_{n-1}; RangeError on overflow.
double hermite_H(std::size_t n, double x);

/// h_n(x) from the normalized recurrence h_{n+1} = (sqrt(2) x h_n - sqrt(n) h_{n-1}) / sqrt(n+1).
double hermite_h(std::size_t n, double x);

/// Both values; H is reconstructed as h sqrt(2^n n!) in the log domain.
HermiteEval hermite_eval(std::size_t n, double x);

/// |h_n(x)| <= e^{x^2/2}.
bool szasz_holds(std::size_t n, double x);

/// G(t,x) = sum_k h_k(x) t^k, summed in 50-digit arithmetic.
struct GenFunValue {
  double t = 0.0;
  double x = 0.0;
  double value = 1.0;
  /// e^{x^2/2} |t|^{N+1} / (1 - |t|) with N = terms_used - 1.
  double tail_bound = 0.0;
  /// Bound on the arithmetic error of the partial sum.
  double rounding_bound = 0.0;
  std::size_t terms_used = 1;

  /// value - tail_bound - rounding_bound.
  double certified_lower() const { return value - tail_bound - rounding_bound; }
};

/// Terms are added until the Szasz tail bound is at most tol.
/// DomainError for |t| >= 1, BudgetError when more than max_terms would be needed.
GenFunValue generating_G(double t, double x, double tol = 1e-10, std::size_t max_terms = 200000);

struct PositivityScan {
  double min_value = 0.0;
  double argmin_t = 0.0;
  double argmin_x = 0.0;
  /// Smallest value - tail_bound - rounding_bound over the grid.
  double min_certified = 0.0;
  bool all_positive = false;
  /// Row-major over t_grid, then x_grid.
  std::vector<GenFunValue> points;
};

/// Evaluates G on the product grid; all_positive iff every certified lower bound is > 0.
PositivityScan positivity_scan(const std::vector<double>& t_grid, const std::vector<double>& x_grid,
                               double tol = 1e-10);

/// lo, lo + step, ... up to hi inclusive (within step / 1e6), computed as lo + i step.
std::vector<double> grid_range(double lo, double hi, double step);

}  // namespace momentforge
