#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "momentforge/measure.hpp"
#include "momentforge/moment_sequence.hpp"
#include "momentforge/qseries.hpp"

namespace momentforge {

struct CatalogOptions {
  /// Shift and step of the Bernstein power moments f(alpha) ... f(alpha + (n-1) beta).
  double alpha = 1.0;
  double beta = 1.0;
  /// Tail tolerance of truncated series measures.
  double tol = kSeriesTolerance;
};

/// A resolved catalog object. Absent members are not defined for its family.
struct CatalogEntry {
  std::string id;
  std::string family;
  std::optional<MomentSequence> moments;
  std::optional<Measure> measure;
  std::function<std::complex<double>(std::complex<double>)> mellin;
  std::function<PowerSeries(std::size_t)> series;
};

/// Parses ids such as "affine:1", "ratio:1:2", "qbeta:0.5:0.25:0.5:1", "hp:0.3:0.5".
/// Unknown families, wrong arity, unparsable numbers and out-of-domain
/// parameters raise UsageError.
CatalogEntry resolve(const std::string& id, const CatalogOptions& opts = {});

/// "family:param:..." patterns accepted by resolve, one per family.
const std::vector<std::string>& catalog_patterns();

}  // namespace momentforge
