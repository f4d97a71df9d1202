#include "momentforge/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "momentforge/error.hpp"

namespace momentforge {

std::string to_string(HankelMatrix m) { return m == HankelMatrix::H0 ? "H0" : "H1"; }

std::string to_string(CarlemanVerdict v) {
  switch (v) {
    case CarlemanVerdict::DivergentPattern:
      return "DivergentPattern";
    case CarlemanVerdict::ConvergentPattern:
      return "ConvergentPattern";
    case CarlemanVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::AllPositive:
      return "AllPositive";
    case Trichotomy::SymmetricZeroOdd:
      return "SymmetricZeroOdd";
    case Trichotomy::DiracAtZero:
      return "DiracAtZero";
  }
  return "?";
}

namespace {

struct PivotFailure {
  std::size_t step;
  std::size_t index;
  double pivot;
};

// Diagonally pivoted Cholesky on a symmetric n x n matrix (row-major).
std::optional<PivotFailure> pivoted_cholesky(std::vector<double> a, std::size_t n, double tol) {
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (p == n || a[i * n + i] > a[p * n + p])) {
        p = i;
      }
    }
    const double d = a[p * n + p];
    if (d < -tol) {
      return PivotFailure{step, p, d};
    }
    if (d <= tol) {
      // Remaining diagonal is numerically zero: any off-diagonal mass makes a
      // 2x2 principal minor indefinite.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (done[i] || done[j]) {
            continue;
          }
          const double di = a[i * n + i];
          const double dj = a[j * n + j];
          const double off = a[i * n + j];
          const double lambda = 0.5 * (di + dj) - std::hypot(0.5 * (di - dj), off);
          if (lambda < -tol) {
            return PivotFailure{step, i, lambda};
          }
        }
      }
      return std::nullopt;
    }
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) {
        continue;
      }
      const double lip = a[i * n + p] / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) {
          a[i * n + j] -= lip * a[p * n + j];
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

HankelVerdict stieltjes_check(const MomentSequence& s, std::size_t N, double tol) {
  if (N < 1) {
    throw PreconditionError("stieltjes_check: N must be at least 1");
  }
  if (!(tol >= 0.0)) {
    throw PreconditionError("stieltjes_check: tolerance must be nonnegative");
  }
  const std::size_t count = 2 * N + 2;
  std::vector<double> logs(count);
  for (std::size_t k = 0; k < count; ++k) {
    logs[k] = s.log_value(k);
    if (std::isnan(logs[k]) || logs[k] == std::numeric_limits<double>::infinity()) {
      throw RangeError("stieltjes_check: s_" + std::to_string(k) +
                       " is not representable; supply the sequence through its logarithm");
    }
  }

  HankelVerdict verdict{ConsistentPSD{}, N, tol};
  const std::size_t n = N + 1;
  for (HankelMatrix which : {HankelMatrix::H0, HankelMatrix::H1}) {
    const std::size_t shift = which == HankelMatrix::H0 ? 0 : 1;
    std::vector<double> scale(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = logs[2 * i + shift];
      scale[i] = std::isfinite(d) ? 0.5 * d : 0.0;
    }
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a[i * n + j] = std::exp(logs[i + j + shift] - scale[i] - scale[j]);
      }
    }
    if (auto fail = pivoted_cholesky(std::move(a), n, tol)) {
      const double unscaled = fail->pivot * std::exp(2.0 * scale[fail->index]);
      verdict.status = FailedAt{fail->step, which, unscaled, fail->pivot};
      return verdict;
    }
  }
  return verdict;
}

CarlemanDiagnostic carleman_diagnostic(const MomentSequence& s, std::size_t N, const CarlemanOptions& opts) {
  if (N < 4) {
    throw PreconditionError("carleman_diagnostic: N must be at least 4");
  }
  CarlemanDiagnostic out;
  out.partial_sums.reserve(N);
  std::vector<double> log_terms(N + 1, 0.0);
  double sum = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const double ls = s.log_value(n);
    if (!std::isfinite(ls)) {
      throw DomainError("carleman_diagnostic: s_" + std::to_string(n) + " is not positive");
    }
    log_terms[n] = -ls / (2.0 * static_cast<double>(n));
    sum += std::exp(log_terms[n]);
    out.partial_sums.push_back(sum);
  }
  const std::size_t half = N / 2;
  const double log_ratio = std::log(static_cast<double>(N) / static_cast<double>(half));
  out.partial_sum = sum;
  out.slope_estimate = std::log(out.partial_sums[N - 1] / out.partial_sums[half - 1]) / log_ratio;
  out.decay_exponent = -(log_terms[N] - log_terms[half]) / log_ratio;
  if (out.slope_estimate >= opts.divergence_slope) {
    out.verdict = CarlemanVerdict::DivergentPattern;
  } else if (out.decay_exponent >= 1.0 + opts.decay_margin) {
    out.verdict = CarlemanVerdict::ConvergentPattern;
  } else {
    out.verdict = CarlemanVerdict::Inconclusive;
  }
  return out;
}

Trichotomy trichotomy_classify(std::span<const double> s, std::size_t N) {
  if (N < 2 || s.size() <= N) {
    throw PreconditionError("trichotomy_classify: need N >= 2 and terms s_0..s_N");
  }
  double biggest = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    if (s[n] < 0.0 || std::isnan(s[n])) {
      throw InconsistencyError("trichotomy_classify: s_" + std::to_string(n) + " is negative");
    }
    biggest = std::max(biggest, s[n]);
  }
  const double zero_tol = 1e-13 * biggest;
  if (!(s[0] > zero_tol)) {
    throw InconsistencyError("trichotomy_classify: s_0 must be positive");
  }
  bool all_positive = true;
  bool odd_zero_even_positive = true;
  bool tail_zero = true;
  for (std::size_t n = 1; n <= N; ++n) {
    const bool zero = s[n] <= zero_tol;
    all_positive = all_positive && !zero;
    tail_zero = tail_zero && zero;
    odd_zero_even_positive = odd_zero_even_positive && (zero == (n % 2 == 1));
  }
  if (all_positive) {
    return Trichotomy::AllPositive;
  }
  if (odd_zero_even_positive) {
    return Trichotomy::SymmetricZeroOdd;
  }
  if (tail_zero) {
    return Trichotomy::DiracAtZero;
  }
  throw InconsistencyError(
      "trichotomy_classify: zero pattern matches no admissible case; the sequence is not "
      "an infinitely divisible moment sequence");
}

Trichotomy trichotomy_classify(const MomentSequence& s, std::size_t N) {
  std::vector<double> values(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    values[n] = s.value(n);
  }
  return trichotomy_classify(values, N);
}

MomentSequence power_sequence(const MomentSequence& s, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("power_sequence: exponent must be positive");
  }
  if (s.is_dirac_at_zero()) {
    return MomentSequence::dirac_at_zero(std::pow(s.dirac_mass(), c));
  }
  return MomentSequence::from_log([s, c](std::size_t n) { return c * s.log_value(n); }, s.normalized());
}

}  // namespace momentforge
