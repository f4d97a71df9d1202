#pragma once

#include <complex>

#include "momentforge/measure.hpp"
#include "momentforge/moment_sequence.hpp"

namespace momentforge {

/// gamma_{a,c}: Mellin transform (Gamma(a+z)/Gamma(a))^c, moments ((a)_n)^c.
struct GammaFamily {
  double a = 1.0;
  double c = 1.0;
};

/// beta(a,b)_c, 0 < a < b: Mellin transform ((Gamma(a+z)/Gamma(a)) / (Gamma(b+z)/Gamma(b)))^c.
struct BetaFamily {
  double a = 1.0;
  double b = 2.0;
  double c = 1.0;
};

/// v_c: log-normal density with Mellin transform q^{-c z (z+1) / 2}.
struct LogNormalQFamily {
  double q = 0.5;
  double c = 1.0;
};

/// x^{a-1} e^{-x} / Gamma(a) on (0, inf). Only c = 1 has a density here.
DensityMeasure gamma_density(const GammaFamily& fam);
std::complex<double> gamma_mellin(const GammaFamily& fam, std::complex<double> z);
MomentSequence gamma_moments(const GammaFamily& fam);

/// x^{a-1} (1-x)^{b-a-1} / B(a, b-a) on (0, 1). Only c = 1 has a density here.
DensityMeasure beta_density(const BetaFamily& fam);
std::complex<double> beta_mellin(const BetaFamily& fam, std::complex<double> z);
MomentSequence beta_moments(const BetaFamily& fam);

/// q^{c/8} / sqrt(2 pi log(1/q^c)) x^{-1/2} exp(-(log x)^2 / (2 log(1/q^c))) on (0, inf).
DensityMeasure vc_density(const LogNormalQFamily& fam);
std::complex<double> vc_mellin(const LogNormalQFamily& fam, std::complex<double> z);
MomentSequence vc_moments(const LogNormalQFamily& fam);

/// s_0 = 1, s_n = 1 / (a_1 ... a_n) for a normalized sequence with a_n > 0.
/// The first 64 terms are validated on construction, later ones on access.
MomentSequence t_transform(const MomentSequence& a);

/// a_0 = 1, a_n = s_{n-1} / s_n; inverts t_transform.
MomentSequence t_transform_inverse(const MomentSequence& s);

}  // namespace momentforge
