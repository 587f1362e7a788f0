#include "bmc/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bmc/errors.hpp"
#include "bmc/quadrature.hpp"

namespace bmc {

void BarParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(a0) || !finite(a1) || !(std::abs(a0) < 1.0) || !(std::abs(a1) < 1.0)) {
    throw ConfigError("BAR coefficients a0, a1 must lie in (-1, 1)");
  }
  if (!finite(b0) || !finite(b1)) throw ConfigError("BAR offsets must be finite");
  if (!finite(sigma) || !(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!finite(rho) || std::abs(rho) > sigma * sigma) {
    throw ConfigError("noise correlation must satisfy |rho| <= sigma^2");
  }
}

double BarParams::a() const {
  if (!symmetric()) {
    throw NumericRejection("operation requires the symmetric BAR kernel (a0 = a1, b = 0, rho = 0)");
  }
  return a0;
}

double BarParams::sigma_a() const { return sigma / std::sqrt(1.0 - a() * a()); }

const char* to_string(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "unknown";
}

RegimeTag classify_regime(double a) {
  RegimeTag tag;
  tag.alpha = std::abs(a);
  const double x = 2.0 * a * a - 1.0;
  if (std::abs(x) <= kRegimeEps) {
    tag.regime = Regime::critical;
  } else if (x < 0.0) {
    tag.regime = Regime::subcritical;
  } else {
    tag.regime = Regime::supercritical;
  }
  return tag;
}

std::pair<double, double> sample_children(double x, const BarParams& p,
                                          RandomStream& rng) {
  const auto [z0, z1] = rng.next_normal_pair();
  // Cholesky factor of [[s^2, rho], [rho, s^2]].
  const double l10 = p.rho / p.sigma;
  const double l11 = std::sqrt(std::max(0.0, p.sigma * p.sigma - l10 * l10));
  const double e0 = p.sigma * z0;
  const double e1 = l10 * z0 + l11 * z1;
  return {p.a0 * x + p.b0 + e0, p.a1 * x + p.b1 + e1};
}

double sample_qn(double x, int n, const BarParams& params, RandomStream& rng) {
  const double a = params.a();
  if (n < 0) throw ConfigError("sample_qn: negative power");
  if (n == 0) return x;
  const double an = std::pow(a, static_cast<double>(n));
  const double spread = std::sqrt(1.0 - an * an) * params.sigma_a();
  return an * x + spread * rng.next_normal();
}

namespace {

double gauss_pdf(double x, double sd) {
  return std::exp(-0.5 * (x / sd) * (x / sd)) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double invariant_scale(const BarParams& p) {
  if (p.a0 != p.a1 || p.b0 != 0.0 || p.b1 != 0.0) {
    throw NumericRejection(
        "densities relative to the invariant law need a0 = a1 and b0 = b1 = 0");
  }
  return p.sigma / std::sqrt(1.0 - p.a0 * p.a0);
}

double q_invariant(double x, double y, double a, double sigma) {
  const double e = (a * a * y * y + a * a * x * x - 2.0 * a * x * y) / (2.0 * sigma * sigma);
  return std::exp(-e) / std::sqrt(1.0 - a * a);
}

double p_lebesgue(double x, double y, double z, const BarParams& p) {
  const double s2 = p.sigma * p.sigma;
  const double det = s2 * s2 - p.rho * p.rho;
  if (!(det > 0.0)) throw NumericRejection("degenerate noise covariance (|rho| = sigma^2)");
  const double u = y - p.a0 * x - p.b0;
  const double v = z - p.a1 * x - p.b1;
  const double g = u * u - 2.0 * p.rho / s2 * u * v + v * v;
  return std::exp(-s2 / (2.0 * det) * g) / (2.0 * std::numbers::pi * std::sqrt(det));
}

}  // namespace

double density_q(double x, double y, const BarParams& p, DensityBase base) {
  p.validate();
  if (base == DensityBase::invariant) {
    invariant_scale(p);
    return q_invariant(x, y, p.a0, p.sigma);
  }
  return 0.5 * (gauss_pdf(y - p.a0 * x - p.b0, p.sigma) +
                gauss_pdf(y - p.a1 * x - p.b1, p.sigma));
}

double density_p(double x, double y, double z, const BarParams& p, DensityBase base) {
  p.validate();
  if (base == DensityBase::lebesgue) return p_lebesgue(x, y, z, p);
  const double sa = invariant_scale(p);
  if (p.rho == 0.0) return q_invariant(x, y, p.a0, p.sigma) * q_invariant(x, z, p.a0, p.sigma);
  return p_lebesgue(x, y, z, p) / (gauss_pdf(y, sa) * gauss_pdf(z, sa));
}

double frak_h(double x, double a, double sigma) {
  if (!(std::abs(a) < 1.0)) throw ConfigError("frak_h requires |a| < 1");
  if (!(sigma > 0.0)) throw ConfigError("frak_h requires sigma > 0");
  const double a2 = a * a;
  const double rate = a2 * (1.0 - a2) / (1.0 + a2);
  return std::pow(1.0 - a2 * a2, -0.25) * std::exp(rate * x * x / (2.0 * sigma * sigma));
}

namespace {

// c exp(k x^2).
struct GaussExp {
  double c;
  double k;
};

// Q applied to c exp(k y^2): E[c exp(k (a x + sigma G)^2)]. The returned
// margin 1 - 2 k sigma^2 is positive iff the expectation is finite.
GaussExp apply_q_exp(const GaussExp& g, double a, double sigma, double& margin) {
  const double m = 1.0 - 2.0 * g.k * sigma * sigma;
  margin = m;
  if (m <= 0.0) return {INFINITY, INFINITY};
  return {g.c / std::sqrt(m), g.k * a * a / m};
}

GaussExp power_exp(const GaussExp& g, double p) { return {std::pow(g.c, p), p * g.k}; }
GaussExp times_exp(const GaussExp& f, const GaussExp& g) { return {f.c * g.c, f.k + g.k}; }

struct Integral {
  double margin;  // 1 - 2 k sigma_a^2, positive iff finite
  double value;   // <mu, c exp(k x^2)> when finite
};

Integral mu_integral(const GaussExp& g, double sigma_a) {
  const double m = 1.0 - 2.0 * g.k * sigma_a * sigma_a;
  return {m, m > 0.0 ? g.c / std::sqrt(m) : INFINITY};
}

void cross_check(const std::string& key, const GaussExp& g, double sigma_a,
                 const Integral& exact, AssumptionReport& report) {
  double q[3];
  const int orders[3] = {32, 64, 128};
  for (int i = 0; i < 3; ++i) {
    q[i] = normal_expectation([&](double x) { return g.c * std::exp(g.k * x * x); }, 0.0,
                              sigma_a, orders[i]);
  }
  if (exact.margin > 0.0) {
    if (std::abs(q[2] - exact.value) > 1e-6 * exact.value) {
      report.flags.push_back("quadrature_mismatch:" + key);
    }
  } else if (!(q[0] < q[1] && q[1] < q[2])) {
    report.flags.push_back("quadrature_inconclusive:" + key);
  }
}

}  // namespace

AssumptionReport check_assumptions(double a, double sigma) {
  if (!(std::abs(a) < 1.0)) throw ConfigError("check_assumptions requires |a| < 1");
  if (!(sigma > 0.0)) throw ConfigError("check_assumptions requires sigma > 0");
  AssumptionReport r;
  r.a = a;
  r.sigma = sigma;
  const double a2 = a * a;
  const double sigma_a = sigma / std::sqrt(1.0 - a2);
  const GaussExp h{std::pow(1.0 - a2 * a2, -0.25),
                   a2 * (1.0 - a2) / (1.0 + a2) / (2.0 * sigma * sigma)};

  constexpr double kNear = 1e-2;
  auto record = [&](const std::string& key, const std::string& norm_key, double step_margin,
                    const GaussExp& integrand, double root) {
    const Integral in = mu_integral(integrand, sigma_a);
    const double margin = std::min(step_margin, in.margin);
    r.margins[key] = margin;
    if (std::abs(margin) < kNear) r.flags.push_back("near_threshold:" + key);
    const bool finite = margin > 0.0;
    if (finite) {
      r.norms[norm_key] = std::pow(in.value, 1.0 / root);
      cross_check(key, integrand, sigma_a, in, r);
    } else if (step_margin > 0.0) {
      cross_check(key, integrand, sigma_a, in, r);
    }
    return finite;
  };

  // h itself is always in L^2(mu).
  r.norms["h_L2"] = std::sqrt(mu_integral(power_exp(h, 2.0), sigma_a).value);

  r.h_in_L4 = record("h_in_L4", "h_L4", 1.0, power_exp(h, 4.0), 4.0);

  double m_qh = 0.0;
  const GaussExp qh = apply_q_exp(h, a, sigma, m_qh);
  r.Qh_in_L4 = record("Qh_in_L4", "Qh_L4", m_qh, power_exp(qh, 4.0), 4.0);

  // P(h (x) h) = (Qh)^2, then P((Qh)^2 (x)_sym h) = Q((Qh)^2) Qh.
  double m_inner = 0.0;
  const GaussExp inner = apply_q_exp(power_exp(qh, 2.0), a, sigma, m_inner);
  const double step = std::min(m_qh, m_inner);
  if (step > 0.0) {
    const GaussExp outer = times_exp(inner, qh);
    r.hilsch2_holds = record("hilsch2_holds", "hilsch2_L2", step, power_exp(outer, 2.0), 2.0);
  } else {
    r.margins["hilsch2_holds"] = step;
    if (std::abs(step) < kNear) r.flags.push_back("near_threshold:hilsch2_holds");
    r.hilsch2_holds = false;
  }
  return r;
}

}  // namespace bmc
