#include "momentforge/measure.hpp"

#include <algorithm>
#include <cmath>

namespace momentforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<Atom> merge_sorted(std::vector<Atom> atoms, double tol) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!out.empty() && a.location - out.back().location <= tol * a.location) {
      out.back().weight += a.weight;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, double zero_mass, double truncation_error,
                             double merge_tolerance)
    : zero_mass_(zero_mass), truncation_error_(truncation_error) {
  if (!(zero_mass >= 0.0) || !std::isfinite(zero_mass)) {
    throw DomainError("AtomicMeasure: zero_mass must be finite and nonnegative");
  }
  if (!(truncation_error >= 0.0) || !std::isfinite(truncation_error)) {
    throw DomainError("AtomicMeasure: truncation_error must be finite and nonnegative");
  }
  std::vector<Atom> kept;
  kept.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!(a.location > 0.0) || !std::isfinite(a.location)) {
      throw DomainError("AtomicMeasure: atom locations must be finite and positive");
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw DomainError("AtomicMeasure: atom weights must be finite and nonnegative");
    }
    if (a.weight > 0.0) {
      kept.push_back(a);
    }
  }
  atoms_ = merge_sorted(std::move(kept), merge_tolerance);
}

AtomicMeasure AtomicMeasure::dirac(double location, double weight) {
  if (location == 0.0) {
    return AtomicMeasure({}, weight);
  }
  return AtomicMeasure({{location, weight}});
}

double AtomicMeasure::total_mass() const {
  double s = zero_mass_;
  for (const auto& a : atoms_) {
    s += a.weight;
  }
  return s;
}

double AtomicMeasure::max_location() const { return atoms_.empty() ? 0.0 : atoms_.back().location; }

DensityMeasure::DensityMeasure(LogDensity log_density, double lo, double hi, QuadratureHint hint,
                               std::string catalog_id, std::map<std::string, double> params,
                               double mellin_strip_lo, double log_spread)
    : log_density_(std::move(log_density)),
      lo_(lo),
      hi_(hi),
      hint_(hint),
      catalog_id_(std::move(catalog_id)),
      params_(std::move(params)),
      strip_lo_(mellin_strip_lo),
      log_spread_(log_spread) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw DomainError("DensityMeasure: support must be an interval inside [0, inf)");
  }
  if (hint == QuadratureHint::FiniteInterval && !std::isfinite(hi)) {
    throw DomainError("DensityMeasure: finite-interval hint needs a bounded support");
  }
  if (hint == QuadratureHint::ExponentialDecay && std::isfinite(hi)) {
    throw DomainError("DensityMeasure: exponential-decay hint needs support [lo, inf)");
  }
  if (!(log_spread > 0.0)) {
    throw DomainError("DensityMeasure: log_spread must be positive");
  }
}

double DensityMeasure::density(double x) const {
  if (!(x > lo_ && x < hi_)) {
    return 0.0;
  }
  return std::exp(log_density_(x));
}

std::pair<double, double> DensityMeasure::log_window(
    const std::function<double(double)>& magnitude) const {
  constexpr double kLimit = 700.0;
  const double umin = lo_ > 0.0 ? std::max(std::log(lo_), -kLimit) : -kLimit;
  const double umax = std::isfinite(hi_) ? std::min(std::log(hi_), kLimit) : kLimit;
  const double step = 0.5 * log_spread_;

  double peak_u = 0.5 * (umin + umax);
  double peak = -1.0;
  for (double u = umin + 0.5 * step; u < umax; u += step) {
    const double v = magnitude(u);
    if (std::isfinite(v) && v > peak) {
      peak = v;
      peak_u = u;
    }
  }
  if (!(peak > 0.0)) {
    throw QuadratureFailure("log-substitution: integrand vanishes on the scan range", 0.0);
  }
  double a = std::max(umin, peak_u - 12.0 * log_spread_);
  double b = std::min(umax, peak_u + 12.0 * log_spread_);
  const double negligible = 1e-30 * peak;
  while (a > umin && magnitude(a) > negligible) {
    a = std::max(umin, a - log_spread_);
  }
  while (b < umax && magnitude(b) > negligible) {
    b = std::min(umax, b + log_spread_);
  }
  return {a, b};
}

MellinValue moment(const AtomicMeasure& m, std::size_t n) {
  const double dn = static_cast<double>(n);
  auto r = integrate<double>(m, [&](double x) { return n == 0 ? 1.0 : std::pow(x, dn); });
  return {r.value, r.abs_error};
}

MellinValue moment(const DensityMeasure& m, std::size_t n, const QuadConfig& cfg) {
  const double dn = static_cast<double>(n);
  auto r = m.integrate<double>(
      [&](double x, double ld) { return n == 0 ? std::exp(ld) : std::exp(dn * std::log(x) + ld); }, cfg);
  return {r.value, r.abs_error};
}

MellinValue moment(const Measure& m, std::size_t n, const QuadConfig& cfg) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&m)) {
    return moment(*atomic, n);
  }
  return moment(std::get<DensityMeasure>(m), n, cfg);
}

MellinValue mellin(const AtomicMeasure& m, std::complex<double> z) {
  std::complex<double> sum = 0.0;
  double abs_sum = 0.0;
  double largest = 0.0;
  for (const auto& a : m.atoms()) {
    const std::complex<double> term = a.weight * std::exp(z * std::log(a.location));
    sum += term;
    abs_sum += std::abs(term);
    largest = std::max(largest, std::pow(a.location, z.real()));
  }
  if (m.zero_mass() > 0.0) {
    if (z == std::complex<double>(0.0)) {
      sum += m.zero_mass();
      abs_sum += m.zero_mass();
      largest = std::max(largest, 1.0);
    } else if (!(z.real() > 0.0)) {
      throw DomainError("mellin: x^z is not integrable at the atom at 0 for Re z <= 0");
    }
  }
  return {sum, m.truncation_error() * largest + 4.0 * kEps * abs_sum};
}

MellinValue mellin(const DensityMeasure& m, std::complex<double> z, const QuadConfig& cfg) {
  if (!(z.real() > m.mellin_strip_lo())) {
    throw DomainError("mellin: Re z = " + std::to_string(z.real()) + " is outside the strip Re z > " +
                      std::to_string(m.mellin_strip_lo()) + " of " + m.catalog_id());
  }
  auto r = m.integrate<std::complex<double>>(
      [&](double x, double ld) { return std::exp(z * std::log(x) + ld); }, cfg);
  return {r.value, r.abs_error};
}

MellinValue mellin(const Measure& m, std::complex<double> z, const QuadConfig& cfg) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&m)) {
    return mellin(*atomic, z);
  }
  return mellin(std::get<DensityMeasure>(m), z, cfg);
}

MellinValue total_mass(const Measure& m, const QuadConfig& cfg) { return moment(m, 0, cfg); }

AtomicMeasure product_convolve(const AtomicMeasure& m1, const AtomicMeasure& m2, double merge_tolerance) {
  std::vector<Atom> atoms;
  atoms.reserve(m1.size() * m2.size());
  double underflow = 0.0;
  for (const auto& a : m1.atoms()) {
    for (const auto& b : m2.atoms()) {
      const double loc = a.location * b.location;
      if (loc > 0.0) {
        atoms.push_back({loc, a.weight * b.weight});
      } else {
        underflow += a.weight * b.weight;
      }
    }
  }
  const double mass1 = m1.total_mass();
  const double mass2 = m2.total_mass();
  const double zero =
      m1.zero_mass() * mass2 + m2.zero_mass() * mass1 - m1.zero_mass() * m2.zero_mass() + underflow;
  const double e1 = m1.truncation_error();
  const double e2 = m2.truncation_error();
  return AtomicMeasure(std::move(atoms), std::max(zero, 0.0), e1 * mass2 + e2 * mass1 + e1 * e2,
                       merge_tolerance);
}

AtomicMeasure additive_convolve(const AtomicMeasure& m1, const AtomicMeasure& m2, double merge_tolerance) {
  std::vector<Atom> atoms;
  atoms.reserve((m1.size() + 1) * (m2.size() + 1));
  for (const auto& a : m1.atoms()) {
    for (const auto& b : m2.atoms()) {
      atoms.push_back({a.location + b.location, a.weight * b.weight});
    }
    if (m2.zero_mass() > 0.0) {
      atoms.push_back({a.location, a.weight * m2.zero_mass()});
    }
  }
  if (m1.zero_mass() > 0.0) {
    for (const auto& b : m2.atoms()) {
      atoms.push_back({b.location, b.weight * m1.zero_mass()});
    }
  }
  const double e1 = m1.truncation_error();
  const double e2 = m2.truncation_error();
  return AtomicMeasure(std::move(atoms), m1.zero_mass() * m2.zero_mass(),
                       e1 * m2.total_mass() + e2 * m1.total_mass() + e1 * e2, merge_tolerance);
}

AtomicMeasure pushforward(const AtomicMeasure& m, const PointMap& map) {
  std::vector<Atom> atoms;
  atoms.reserve(m.size() + 1);
  double zero = 0.0;
  if (const auto* e = std::get_if<ExpNegMap>(&map)) {
    if (!(e->beta > 0.0)) {
      throw DomainError("pushforward: exp(-beta x) needs beta > 0");
    }
    for (const auto& a : m.atoms()) {
      const double y = std::exp(-e->beta * a.location);
      if (y > 0.0) {
        atoms.push_back({y, a.weight});
      } else {
        zero += a.weight;
      }
    }
    if (m.zero_mass() > 0.0) {
      atoms.push_back({1.0, m.zero_mass()});
    }
  } else if (std::holds_alternative<NegLogMap>(map)) {
    if (m.zero_mass() > 0.0) {
      throw DomainError("pushforward: -log is undefined at the atom at 0");
    }
    for (const auto& a : m.atoms()) {
      if (a.location > 1.0) {
        throw DomainError("pushforward: -log maps locations above 1 off the half-line");
      }
      const double y = -std::log(a.location);
      if (y > 0.0) {
        atoms.push_back({y, a.weight});
      } else {
        zero += a.weight;
      }
    }
  } else {
    const double g = std::get<ScaleMap>(map).gamma;
    if (!(g > 0.0)) {
      throw DomainError("pushforward: scaling needs gamma > 0");
    }
    for (const auto& a : m.atoms()) {
      atoms.push_back({g * a.location, a.weight});
    }
    zero = m.zero_mass();
  }
  return AtomicMeasure(std::move(atoms), zero, m.truncation_error());
}

AtomicMeasure scaled(const AtomicMeasure& m, double factor) {
  if (!(factor >= 0.0)) {
    throw DomainError("scaled: factor must be nonnegative");
  }
  std::vector<Atom> atoms = m.atoms();
  for (auto& a : atoms) {
    a.weight *= factor;
  }
  return AtomicMeasure(std::move(atoms), m.zero_mass() * factor, m.truncation_error() * factor);
}

}  // namespace momentforge
