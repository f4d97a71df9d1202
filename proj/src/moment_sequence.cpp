#include "momentforge/moment_sequence.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "momentforge/error.hpp"

namespace momentforge {

MomentSequence MomentSequence::from_log(LogGenerator log_term, bool normalized) {
  MomentSequence s;
  s.log_term_ = std::move(log_term);
  s.normalized_ = normalized;
  if (normalized && std::abs(s.log_term_(0)) > 1e-14) {
    throw PreconditionError("MomentSequence: normalized sequence must have s_0 = 1");
  }
  return s;
}

MomentSequence MomentSequence::from_values(std::vector<double> values) {
  if (values.empty()) {
    throw PreconditionError("MomentSequence: empty value list");
  }
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!(values[n] > 0.0) || !std::isfinite(values[n])) {
      throw DomainError("MomentSequence: term " + std::to_string(n) +
                        " is not a finite positive number (use dirac_at_zero for c*delta_0n)");
    }
  }
  auto logs = std::make_shared<std::vector<double>>();
  logs->reserve(values.size());
  for (double v : values) {
    logs->push_back(std::log(v));
  }
  MomentSequence s;
  s.length_ = values.size();
  s.normalized_ = values[0] == 1.0;
  s.log_term_ = [logs](std::size_t n) {
    if (n >= logs->size()) {
      throw RangeError("MomentSequence: term " + std::to_string(n) + " beyond the " +
                       std::to_string(logs->size()) + " supplied values");
    }
    return (*logs)[n];
  };
  return s;
}

MomentSequence MomentSequence::dirac_at_zero(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("MomentSequence: dirac mass must be finite and nonnegative");
  }
  MomentSequence s;
  s.dirac_mass_ = c;
  s.normalized_ = c == 1.0;
  const double log_c = std::log(c);
  s.log_term_ = [log_c](std::size_t n) {
    return n == 0 ? log_c : -std::numeric_limits<double>::infinity();
  };
  return s;
}

double MomentSequence::log_value(std::size_t n) const { return log_term_(n); }

double MomentSequence::value(std::size_t n) const { return std::exp(log_term_(n)); }

}  // namespace momentforge
