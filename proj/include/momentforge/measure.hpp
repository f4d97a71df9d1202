#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "momentforge/error.hpp"
#include "momentforge/quadrature.hpp"

namespace momentforge {

/// Relative tolerance on location under which two atoms are the same point.
inline constexpr double kAtomMergeTolerance = 1e-12;

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// An integral with its error estimate. For moments the real part carries the value.
struct MellinValue {
  std::complex<double> value;
  double abs_error = 0.0;

  double real() const { return value.real(); }
};

/// Finite nonnegative combination of point masses on [0, inf).
///
/// Atoms at positive locations are kept sorted and merged when their locations
/// agree to kAtomMergeTolerance (relative); mass at 0 lives in zero_mass. A
/// measure obtained by truncating an infinite series records the discarded mass
/// in truncation_error, and every operation below propagates it.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms, double zero_mass = 0.0,
                         double truncation_error = 0.0,
                         double merge_tolerance = kAtomMergeTolerance);

  /// weight * delta_location; location 0 goes to zero_mass.
  static AtomicMeasure dirac(double location, double weight = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double zero_mass() const { return zero_mass_; }
  double truncation_error() const { return truncation_error_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty() && zero_mass_ == 0.0; }

  /// Retained mass including zero_mass (truncation_error excluded).
  double total_mass() const;
  /// Largest atom location, 0 for a measure without positive atoms.
  double max_location() const;

 private:
  std::vector<Atom> atoms_;
  double zero_mass_ = 0.0;
  double truncation_error_ = 0.0;
};

enum class QuadratureHint { FiniteInterval, ExponentialDecay, LogSubstitution };

/// Nonnegative density on an interval, stored through its logarithm.
///
/// The hint selects the integration route:
///  - FiniteInterval: adaptive Gauss-Legendre in x on [lo, hi].
///  - ExponentialDecay: x directly on [lo, lo + 1], then x = lo + 1 - log u for
///    the tail, u in (0, 1).
///  - LogSubstitution: u = log x on (lo, hi) with lo >= 0; the window is centred on
///    the peak of the integrand and spans +-12 log_spread, widened while the ends
///    are not negligible.
class DensityMeasure {
 public:
  using LogDensity = std::function<double(double)>;

  DensityMeasure(LogDensity log_density, double lo, double hi, QuadratureHint hint,
                 std::string catalog_id, std::map<std::string, double> params = {},
                 double mellin_strip_lo = -std::numeric_limits<double>::infinity(),
                 double log_spread = 1.0);

  double log_density(double x) const { return log_density_(x); }
  double density(double x) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  QuadratureHint hint() const { return hint_; }
  const std::string& catalog_id() const { return catalog_id_; }
  const std::map<std::string, double>& params() const { return params_; }
  /// Mellin transforms exist for Re z > mellin_strip_lo.
  double mellin_strip_lo() const { return strip_lo_; }
  double log_spread() const { return log_spread_; }

  /// Integrates f(x, log_density(x)) over the support. `f` combines the two, so
  /// callers can stay in the log domain (x^z * density = exp(z log x + ld)).
  template <class T, class F>
  QuadResult<T> integrate(F&& f, const QuadConfig& cfg = {}) const;

 private:
  std::pair<double, double> log_window(const std::function<double(double)>& magnitude) const;

  LogDensity log_density_;
  double lo_;
  double hi_;
  QuadratureHint hint_;
  std::string catalog_id_;
  std::map<std::string, double> params_;
  double strip_lo_;
  double log_spread_;
};

using Measure = std::variant<AtomicMeasure, DensityMeasure>;

/// Maps accepted by pushforward.
struct ExpNegMap {
  double beta = 1.0;  ///< x -> exp(-beta x)
};
struct NegLogMap {};   ///< x -> -log x
struct ScaleMap {
  double gamma = 1.0;  ///< x -> gamma x
};
using PointMap = std::variant<ExpNegMap, NegLogMap, ScaleMap>;

MellinValue moment(const AtomicMeasure& m, std::size_t n);
MellinValue moment(const DensityMeasure& m, std::size_t n, const QuadConfig& cfg = {});
MellinValue moment(const Measure& m, std::size_t n, const QuadConfig& cfg = {});

MellinValue mellin(const AtomicMeasure& m, std::complex<double> z);
MellinValue mellin(const DensityMeasure& m, std::complex<double> z, const QuadConfig& cfg = {});
MellinValue mellin(const Measure& m, std::complex<double> z, const QuadConfig& cfg = {});

/// Total mass; for densities by quadrature.
MellinValue total_mass(const Measure& m, const QuadConfig& cfg = {});

/// Image of m1 x m2 under (s, t) -> s t.
AtomicMeasure product_convolve(const AtomicMeasure& m1, const AtomicMeasure& m2,
                               double merge_tolerance = kAtomMergeTolerance);

/// Image of m1 x m2 under (s, t) -> s + t (ordinary convolution on [0, inf)).
AtomicMeasure additive_convolve(const AtomicMeasure& m1, const AtomicMeasure& m2,
                                double merge_tolerance = kAtomMergeTolerance);

AtomicMeasure pushforward(const AtomicMeasure& m, const PointMap& map);

/// Same atoms with every weight (and zero_mass, truncation_error) multiplied by factor >= 0.
AtomicMeasure scaled(const AtomicMeasure& m, double factor);

/// Integral of g against an atomic measure. The error term is truncation_error
/// times the largest |g| on the retained atoms.
template <class T, class G>
QuadResult<T> integrate(const AtomicMeasure& m, G&& g) {
  QuadResult<T> out;
  double gmax = 0.0;
  double abs_sum = 0.0;
  for (const auto& a : m.atoms()) {
    const T v = g(a.location);
    out.value += a.weight * v;
    gmax = std::max(gmax, detail::magnitude(v));
    abs_sum += a.weight * detail::magnitude(v);
  }
  if (m.zero_mass() > 0.0) {
    const T v = g(0.0);
    out.value += m.zero_mass() * v;
    gmax = std::max(gmax, detail::magnitude(v));
    abs_sum += m.zero_mass() * detail::magnitude(v);
  }
  out.abs_error = m.truncation_error() * gmax + 4.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return out;
}

/// Integral of g against any measure.
template <class T, class G>
QuadResult<T> integrate(const Measure& m, G&& g, const QuadConfig& cfg = {}) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&m)) {
    return integrate<T>(*atomic, g);
  }
  const auto& dens = std::get<DensityMeasure>(m);
  return dens.integrate<T>([&](double x, double ld) -> T { return g(x) * std::exp(ld); }, cfg);
}

template <class T, class F>
QuadResult<T> DensityMeasure::integrate(F&& f, const QuadConfig& cfg) const {
  switch (hint_) {
    case QuadratureHint::FiniteInterval:
      return integrate_adaptive<T>(
          [&](double x) -> T { return x > lo_ && x < hi_ ? f(x, log_density_(x)) : T{}; }, lo_, hi_, cfg);
    case QuadratureHint::ExponentialDecay: {
      // [lo, lo + 1] directly in x, the tail through x = lo + 1 - log u.
      auto head = integrate_adaptive<T>(
          [&](double x) -> T { return x > lo_ ? f(x, log_density_(x)) : T{}; }, lo_, lo_ + 1.0, cfg);
      auto g = [&](double u) -> T {
        const double x = lo_ + 1.0 - std::log(u);
        const T v = f(x, log_density_(x));
        return v == T{} ? T{} : v / u;
      };
      auto tail = integrate_adaptive<T>(g, 0.0, 1.0, cfg);
      return {head.value + tail.value, head.abs_error + tail.abs_error, head.panels + tail.panels};
    }
    case QuadratureHint::LogSubstitution: {
      auto g = [&](double u) -> T {
        const double x = std::exp(u);
        return f(x, log_density_(x)) * x;
      };
      const auto [ulo, uhi] = log_window([&](double u) { return detail::magnitude(g(u)); });
      return integrate_adaptive<T>(g, ulo, uhi, cfg);
    }
  }
  throw Error("unknown quadrature hint");
}

}  // namespace momentforge
