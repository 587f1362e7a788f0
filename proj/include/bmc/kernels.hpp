#pragma once

// Gaussian bifurcating autoregressive (BAR) kernel:
//   X_{u0} = a0 X_u + b0 + e0,  X_{u1} = a1 X_u + b1 + e1,
// with (e0, e1) ~ N(0, [[sigma^2, rho], [rho, sigma^2]]).

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bmc/random.hpp"
#include "bmc/spectral.hpp"

namespace bmc {

inline constexpr double kRegimeEps = 1e-12;

struct BarParams {
  double a0 = 0.5;
  double a1 = 0.5;
  double b0 = 0.0;
  double b1 = 0.0;
  double sigma = 1.0;
  double rho = 0.0;

  static BarParams symmetric_bar(double a, double sigma) {
    return BarParams{a, a, 0.0, 0.0, sigma, 0.0};
  }

  // Throws ConfigError when out of range.
  void validate() const;
  bool symmetric() const { return a0 == a1 && b0 == 0.0 && b1 == 0.0 && rho == 0.0; }
  // Common coefficient; throws NumericRejection unless symmetric().
  double a() const;
  // sigma (1 - a^2)^{-1/2}; throws NumericRejection unless symmetric().
  double sigma_a() const;
  BarSpectrum spectrum() const { return BarSpectrum(a(), sigma); }
};

enum class Regime { subcritical, critical, supercritical };

const char* to_string(Regime r);

struct RegimeTag {
  double alpha = 0.0;
  Regime regime = Regime::subcritical;
};

RegimeTag classify_regime(double a);

std::pair<double, double> sample_children(double x, const BarParams& params,
                                          RandomStream& rng);

// One draw of a^n x + sqrt(1 - a^{2n}) sigma_a G. Symmetric kernels only.
double sample_qn(double x, int n, const BarParams& params, RandomStream& rng);

enum class DensityBase {
  invariant,  // relative to mu (resp. mu (x) mu); needs a0 = a1, b0 = b1 = 0
  lebesgue,
};

double density_q(double x, double y, const BarParams& params,
                 DensityBase base = DensityBase::invariant);
double density_p(double x, double y, double z, const BarParams& params,
                 DensityBase base = DensityBase::invariant);

// (int q(x, y)^2 mu(dy))^{1/2} for the symmetric kernel, closed form.
double frak_h(double x, double a, double sigma = 1.0);

struct AssumptionReport {
  double a = 0.0;
  double sigma = 1.0;
  bool h_in_L4 = false;
  bool Qh_in_L4 = false;
  bool hilsch2_holds = false;
  // Closed-form norms of the finite quantities; absent when infinite.
  std::map<std::string, double> norms;
  // Integrability margins (positive iff finite), keyed like the booleans.
  std::map<std::string, double> margins;
  std::vector<std::string> flags;
};

// Integrability of h in L^4(mu), Qh in L^4(mu) and of
// || P(P(h (x) h) (x)_sym h) ||_{L^2(mu)} for the symmetric kernel. The
// verdicts come from the sign of the Gaussian exponent; Gauss-Hermite
// quadrature of orders 32/64/128 is run as a cross-check and any
// disagreement is reported in flags.
AssumptionReport check_assumptions(double a, double sigma = 1.0);

}  // namespace bmc
