#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace momentforge {

/// A moment sequence (s_n), held through log s_n.
///
/// Either every term is positive, or the sequence is c * delta_{0n} (the moments
/// of c * delta_0); the second form is built with dirac_at_zero and reports
/// log s_n = -inf for n >= 1. Generators are evaluated on demand and must be pure.
class MomentSequence {
 public:
  using LogGenerator = std::function<double(std::size_t)>;

  /// Sequence n -> exp(log_term(n)). `normalized` asserts s_0 = 1 (checked).
  static MomentSequence from_log(LogGenerator log_term, bool normalized = true);

  /// Finite list of positive terms; indices past the end throw RangeError.
  static MomentSequence from_values(std::vector<double> values);

  /// c * delta_{0n}.
  static MomentSequence dirac_at_zero(double c = 1.0);

  double log_value(std::size_t n) const;
  double value(std::size_t n) const;
  double operator[](std::size_t n) const { return value(n); }

  bool normalized() const { return normalized_; }
  bool is_dirac_at_zero() const { return dirac_mass_.has_value(); }
  /// c for the c * delta_{0n} form.
  double dirac_mass() const { return dirac_mass_.value_or(0.0); }
  /// Number of available terms for finite sequences.
  std::optional<std::size_t> length() const { return length_; }

 private:
  MomentSequence() = default;

  LogGenerator log_term_;
  bool normalized_ = false;
  std::optional<double> dirac_mass_;
  std::optional<std::size_t> length_;
};

}  // namespace momentforge
