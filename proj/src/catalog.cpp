#include "momentforge/catalog.hpp"

#include <charconv>
#include <map>

#include "momentforge/bernstein.hpp"
#include "momentforge/error.hpp"
#include "momentforge/semigroups.hpp"

namespace momentforge {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(':', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) {
      return out;
    }
    start = pos + 1;
  }
}

double parse_number(const std::string& text, const std::string& id) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError("catalog id '" + id + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

MomentSequence moments_of_atoms(const AtomicMeasure& m) {
  return MomentSequence::from_log(
      [m](std::size_t n) { return std::log(moment(m, n).value.real()); }, false);
}

std::function<std::complex<double>(std::complex<double>)> atomic_mellin(const AtomicMeasure& m) {
  return [m](std::complex<double> z) { return mellin(m, z).value; };
}

CatalogEntry bernstein_entry(const BernsteinFunction& f, const CatalogOptions& opts) {
  CatalogEntry e;
  e.family = "bernstein";
  e.moments = power_moments(f, opts.alpha, opts.beta);
  const double alpha = opts.alpha;
  const double beta = opts.beta;
  e.mellin = [f, alpha, beta](std::complex<double> z) { return std::exp(-psi(f, alpha, beta, z)); };
  return e;
}

using Builder = std::function<CatalogEntry(const std::vector<double>&, const CatalogOptions&)>;

struct Family {
  std::size_t arity;
  std::string pattern;
  Builder build;
};

const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> table = {
      {"affine", {1, "affine:a", [](const auto& v, const auto& o) {
                    return bernstein_entry(BernsteinFunction::affine(v[0]), o);
                  }}},
      {"linear", {0, "linear", [](const auto&, const auto& o) {
                    return bernstein_entry(BernsteinFunction::linear(), o);
                  }}},
      {"ratio", {2, "ratio:a:b", [](const auto& v, const auto& o) {
                   return bernstein_entry(BernsteinFunction::ratio(v[0], v[1]), o);
                 }}},
      {"mobius", {0, "mobius", [](const auto&, const auto& o) {
                    return bernstein_entry(BernsteinFunction::mobius(), o);
                  }}},
      {"qratio", {3, "qratio:a:b:q", [](const auto& v, const auto& o) {
                    return bernstein_entry(BernsteinFunction::qratio(v[0], v[1], v[2]), o);
                  }}},
      {"powertower", {0, "powertower", [](const auto&, const auto& o) {
                        return bernstein_entry(BernsteinFunction::power_tower(), o);
                      }}},
      {"gamma", {2, "gamma:a:c", [](const auto& v, const auto&) {
                   const GammaFamily fam{v[0], v[1]};
                   CatalogEntry e;
                   e.family = "gamma";
                   e.moments = gamma_moments(fam);
                   e.mellin = [fam](std::complex<double> z) { return gamma_mellin(fam, z); };
                   if (fam.c == 1.0) {
                     e.measure = gamma_density(fam);
                   }
                   return e;
                 }}},
      {"beta", {3, "beta:a:b:c", [](const auto& v, const auto&) {
                  const BetaFamily fam{v[0], v[1], v[2]};
                  CatalogEntry e;
                  e.family = "beta";
                  e.moments = beta_moments(fam);
                  e.mellin = [fam](std::complex<double> z) { return beta_mellin(fam, z); };
                  if (fam.c == 1.0) {
                    e.measure = beta_density(fam);
                  }
                  return e;
                }}},
      {"vclognormal", {2, "vclognormal:q:c", [](const auto& v, const auto&) {
                         const LogNormalQFamily fam{v[0], v[1]};
                         CatalogEntry e;
                         e.family = "vclognormal";
                         e.moments = vc_moments(fam);
                         e.mellin = [fam](std::complex<double> z) { return vc_mellin(fam, z); };
                         e.measure = vc_density(fam);
                         return e;
                       }}},
      {"qbeta", {4, "qbeta:a:b:q:c", [](const auto& v, const auto& o) {
                   const QParams p{v[0], v[1], v[2]};
                   const double c = v[3];
                   CatalogEntry e;
                   e.family = "qbeta";
                   e.moments = qbeta_moments(p, c);
                   e.mellin = [p, c](std::complex<double> z) { return mellin_qbeta(p, c, z); };
                   e.measure = mu_c(p, c, o.tol);
                   return e;
                 }}},
      {"nu", {2, "nu:a:q", [](const auto& v, const auto& o) {
                const AtomicMeasure m = nu_a(v[0], v[1], o.tol);
                CatalogEntry e;
                e.family = "nu";
                e.moments = moments_of_atoms(m);
                e.mellin = atomic_mellin(m);
                e.measure = m;
                return e;
              }}},
      {"hp", {2, "hp:p:q", [](const auto& v, const auto&) {
                const double p = v[0];
                const double q = v[1];
                hp_coefficients(p, q, 0);
                CatalogEntry e;
                e.family = "hp";
                e.series = [p, q](std::size_t K) { return hp_coefficients(p, q, K); };
                return e;
              }}},
      {"sigmaq", {3, "sigmaq:a:b:q", [](const auto& v, const auto& o) {
                    const QParams p{v[0], v[1], v[2]};
                    const AtomicMeasure m = sigma_abgamma(p, sigma_default_gamma(p), std::nullopt, o.tol);
                    CatalogEntry e;
                    e.family = "sigmaq";
                    e.moments = qbinom_moments(p);
                    e.mellin = atomic_mellin(m);
                    e.measure = m;
                    return e;
                  }}},
  };
  return table;
}

}  // namespace

CatalogEntry resolve(const std::string& id, const CatalogOptions& opts) {
  const auto parts = split(id);
  const auto it = families().find(parts.front());
  if (it == families().end()) {
    throw UsageError("unknown catalog family in '" + id + "'");
  }
  const Family& fam = it->second;
  if (parts.size() - 1 != fam.arity) {
    throw UsageError("catalog id '" + id + "': expected the form " + fam.pattern);
  }
  std::vector<double> values;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    values.push_back(parse_number(parts[i], id));
  }
  try {
    CatalogEntry e = fam.build(values, opts);
    e.id = id;
    return e;
  } catch (const DomainError& err) {
    throw UsageError("catalog id '" + id + "': " + err.what());
  } catch (const PreconditionError& err) {
    throw UsageError("catalog id '" + id + "': " + err.what());
  }
}

const std::vector<std::string>& catalog_patterns() {
  static const std::vector<std::string> out = [] {
    std::vector<std::string> v;
    for (const auto& [name, fam] : families()) {
      v.push_back(fam.pattern);
    }
    return v;
  }();
  return out;
}

}  // namespace momentforge
