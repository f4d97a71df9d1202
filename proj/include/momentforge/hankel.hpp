#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "momentforge/moment_sequence.hpp"

namespace momentforge {

enum class HankelMatrix { H0, H1 };

std::string to_string(HankelMatrix m);

struct ConsistentPSD {};

/// Factorization of `matrix` met a negative pivot at elimination step `order`.
struct FailedAt {
  std::size_t order = 0;
  HankelMatrix matrix = HankelMatrix::H0;
  /// Schur-complement pivot in the units of the original (unscaled) matrix.
  double min_eigenvalue_estimate = 0.0;
  /// The same pivot after diagonal scaling; always below -tolerance.
  double scaled_pivot = 0.0;
};

struct HankelVerdict {
  std::variant<ConsistentPSD, FailedAt> status;
  std::size_t order_tested = 0;
  double tolerance = 0.0;

  bool psd() const { return std::holds_alternative<ConsistentPSD>(status); }
};

/// Positive semidefiniteness of H0 = (s_{i+j}) and H1 = (s_{i+j+1}), 0 <= i, j <= N.
///
/// Entries are formed in the log domain already scaled by sqrt(H_ii H_jj), so the
/// matrices have unit diagonal and `tol` is relative. The factorization is a
/// diagonally pivoted Cholesky; a pivot below -tol fails the check. Needs s_0..s_{2N+1}.
HankelVerdict stieltjes_check(const MomentSequence& s, std::size_t N, double tol = 1e-9);

enum class CarlemanVerdict { DivergentPattern, ConvergentPattern, Inconclusive };

std::string to_string(CarlemanVerdict v);

struct CarlemanOptions {
  /// Partial sums growing at least like N^divergence_slope read as divergent.
  double divergence_slope = 0.25;
  /// Terms decaying faster than n^{-1-decay_margin} read as convergent.
  double decay_margin = 0.05;
};

struct CarlemanDiagnostic {
  double partial_sum = 0.0;
  /// d log S_n / d log n between N/2 and N.
  double slope_estimate = 0.0;
  /// -d log t_n / d log n between N/2 and N, t_n = s_n^{-1/(2n)}.
  double decay_exponent = 0.0;
  CarlemanVerdict verdict = CarlemanVerdict::Inconclusive;
  std::vector<double> partial_sums;  ///< S_1 .. S_N
};

/// Heuristic reading of the Carleman series sum_n s_n^{-1/(2n)} from its first N
/// terms. Divergence of the series implies determinacy; this diagnostic never
/// proves either outcome, it only reports the growth pattern.
CarlemanDiagnostic carleman_diagnostic(const MomentSequence& s, std::size_t N,
                                       const CarlemanOptions& opts = {});

enum class Trichotomy { AllPositive, SymmetricZeroOdd, DiracAtZero };

std::string to_string(Trichotomy t);

/// Zero pattern of an infinitely divisible Hamburger moment sequence over n <= N.
/// Zeros are exact up to 1e-13 * max |s_n|. Throws InconsistencyError when the
/// pattern fits none of the three admissible cases.
Trichotomy trichotomy_classify(std::span<const double> s, std::size_t N);
Trichotomy trichotomy_classify(const MomentSequence& s, std::size_t N);

/// n -> s_n^c, computed as exp(c log s_n).
MomentSequence power_sequence(const MomentSequence& s, double c);

}  // namespace momentforge
