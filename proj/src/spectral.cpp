#include "bmc/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bmc/errors.hpp"

namespace bmc {

namespace {

const std::array<double, kDegreeCap + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kDegreeCap + 1> t{};
    t[0] = 1.0;
    for (int n = 1; n <= kDegreeCap; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

void check_degree(int degree, const char* what) {
  if (degree > kDegreeCap) {
    throw NumericRejection(std::string(what) + ": degree " +
                           std::to_string(degree) + " exceeds cap " +
                           std::to_string(kDegreeCap));
  }
}

void check_same_scale(const SpectralFn& f, const SpectralFn& g) {
  const double s = f.sigma_a();
  const double t = g.sigma_a();
  if (std::abs(s - t) > 1e-12 * std::max(s, t)) {
    throw ConfigError("spectral functions built on different scales sigma_a");
  }
}

}  // namespace

double factorial(int n) {
  if (n < 0 || n > kDegreeCap) {
    throw NumericRejection("factorial index out of range: " + std::to_string(n));
  }
  return factorial_table()[n];
}

SpectralFn::SpectralFn(double sigma_a) : sigma_a_(sigma_a) {
  if (!(sigma_a > 0.0) || !std::isfinite(sigma_a)) {
    throw ConfigError("sigma_a must be positive and finite");
  }
}

SpectralFn::SpectralFn(double sigma_a, std::vector<double> coeffs)
    : SpectralFn(sigma_a) {
  coeffs_ = std::move(coeffs);
  trim();
  check_degree(degree(), "SpectralFn");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ConfigError("non-finite spectral coefficient");
  }
}

SpectralFn SpectralFn::constant(double c, double sigma_a) {
  return SpectralFn(sigma_a, {c});
}

SpectralFn SpectralFn::basis(int n, double sigma_a) {
  check_degree(n, "basis");
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[n] = 1.0;
  return SpectralFn(sigma_a, std::move(c));
}

void SpectralFn::trim() {
  // Beyond the cap nothing may survive, so the scan can stop there.
  while (!coeffs_.empty()) {
    const int n = static_cast<int>(coeffs_.size()) - 1;
    const double c = std::abs(coeffs_.back());
    const double weight = n <= kDegreeCap ? std::sqrt(factorial_table()[n]) : 1.0;
    if (c != 0.0 && c * weight >= 1e-300) break;
    coeffs_.pop_back();
  }
}

double SpectralFn::coeff(int n) const {
  if (n < 0 || n >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[n];
}

int SpectralFn::degree() const {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
}

int SpectralFn::min_nonconstant_index() const {
  for (std::size_t n = 1; n < coeffs_.size(); ++n) {
    if (coeffs_[n] != 0.0) return static_cast<int>(n);
  }
  return -1;
}

double SpectralFn::operator()(double x) const {
  if (coeffs_.empty()) return 0.0;
  const double u = x / sigma_a_;
  double prev = 1.0;  // He_0
  double sum = coeffs_[0];
  if (coeffs_.size() == 1) return sum;
  double cur = u;  // He_1
  sum += coeffs_[1] * cur;
  for (std::size_t n = 1; n + 1 < coeffs_.size(); ++n) {
    const double next = u * cur - static_cast<double>(n) * prev;
    prev = cur;
    cur = next;
    sum += coeffs_[n + 1] * cur;
  }
  return sum;
}

double SpectralFn::norm_sq() const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    s += factorial_table()[n] * coeffs_[n] * coeffs_[n];
  }
  return s;
}

SpectralFn SpectralFn::operator+(const SpectralFn& other) const {
  check_same_scale(*this, other);
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = coeff(n) + other.coeff(n);
  return SpectralFn(sigma_a_, std::move(c));
}

SpectralFn SpectralFn::operator-(const SpectralFn& other) const {
  return *this + other * -1.0;
}

SpectralFn SpectralFn::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return SpectralFn(sigma_a_, std::move(c));
}

void hermite_values(double u, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = u;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    out[n + 1] = u * out[n] - static_cast<double>(n) * out[n - 1];
  }
}

SpectralFn from_monomial(std::span<const double> poly, double sigma_a) {
  std::size_t len = poly.size();
  while (len > 0 && poly[len - 1] == 0.0) --len;
  check_degree(static_cast<int>(len) - 1, "from_monomial");
  // x^k = sigma_a^k sum_j k! / (j! (k-2j)! 2^j) He_{k-2j}(x / sigma_a)
  std::vector<double> c(len, 0.0);
  double scale = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    if (k > 0) scale *= sigma_a;
    if (poly[k] == 0.0) continue;
    double term = 1.0;  // j = 0
    for (std::size_t j = 0; 2 * j <= k; ++j) {
      c[k - 2 * j] += poly[k] * scale * term;
      // ratio to the j+1 term: (k-2j)(k-2j-1) / (2 (j+1))
      const double r = static_cast<double>(k) - 2.0 * static_cast<double>(j);
      term *= r * (r - 1.0) / (2.0 * static_cast<double>(j + 1));
    }
  }
  return SpectralFn(sigma_a, std::move(c));
}

double mu_inner(const SpectralFn& f, const SpectralFn& g) {
  check_same_scale(f, g);
  const auto n_max = std::min(f.coeffs().size(), g.coeffs().size());
  const auto& fact = factorial_table();
  double s = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) s += fact[n] * f.coeffs()[n] * g.coeffs()[n];
  return s;
}

SpectralFn product(const SpectralFn& f, const SpectralFn& g) {
  check_same_scale(f, g);
  if (f.is_zero() || g.is_zero()) return SpectralFn(f.sigma_a());
  const int df = f.degree();
  const int dg = g.degree();
  check_degree(df + dg, "product");
  // He_m He_n = sum_j C(m,j) C(n,j) j! He_{m+n-2j}
  std::vector<double> c(static_cast<std::size_t>(df + dg) + 1, 0.0);
  for (int m = 0; m <= df; ++m) {
    const double cm = f.coeffs()[m];
    if (cm == 0.0) continue;
    for (int n = 0; n <= dg; ++n) {
      const double cn = g.coeffs()[n];
      if (cn == 0.0) continue;
      double t = 1.0;
      for (int j = 0; j <= std::min(m, n); ++j) {
        c[m + n - 2 * j] += cm * cn * t;
        t *= static_cast<double>(m - j) * static_cast<double>(n - j) / (j + 1);
      }
    }
  }
  return SpectralFn(f.sigma_a(), std::move(c));
}

SpectralFn center(const SpectralFn& f) {
  std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
  if (!c.empty()) c[0] = 0.0;
  return SpectralFn(f.sigma_a(), std::move(c));
}

SpectralFn project_r(const SpectralFn& f) {
  return SpectralFn(f.sigma_a(), {0.0, f.coeff(1)});
}

SpectralFn hat(const SpectralFn& f) {
  std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t n = 0; n < std::min<std::size_t>(2, c.size()); ++n) c[n] = 0.0;
  return SpectralFn(f.sigma_a(), std::move(c));
}

BarSpectrum::BarSpectrum(double a, double sigma) : a_(a), sigma_(sigma) {
  if (!(std::abs(a) < 1.0)) throw ConfigError("symmetric BAR requires |a| < 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be positive and finite");
  }
  sigma_a_ = sigma / std::sqrt(1.0 - a * a);
}

double BarSpectrum::eigenvalue(int n) const {
  return std::pow(a_, static_cast<double>(n));
}

void BarSpectrum::check_scale(const SpectralFn& f) const {
  if (std::abs(f.sigma_a() - sigma_a_) > 1e-12 * sigma_a_) {
    throw ConfigError("spectral function scale does not match the kernel's sigma_a");
  }
}

SpectralFn BarSpectrum::apply_q(const SpectralFn& f, int k) const {
  check_scale(f);
  if (k < 0) throw ConfigError("apply_q: negative power");
  if (k == 0) return f;
  std::vector<double> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t n = 1; n < c.size(); ++n) {
    c[n] *= std::pow(a_, static_cast<double>(k) * static_cast<double>(n));
  }
  return SpectralFn(f.sigma_a(), std::move(c));
}

SpectralFn BarSpectrum::p_apply(const SpectralFn& f, const SpectralFn& g) const {
  return product(apply_q(f, 1), apply_q(g, 1));
}

double BarSpectrum::mu_inner_q(const SpectralFn& f, int p, const SpectralFn& g,
                               int q) const {
  check_scale(f);
  check_scale(g);
  const auto n_max = std::min(f.coeffs().size(), g.coeffs().size());
  const double power = static_cast<double>(p) + static_cast<double>(q);
  const auto& fact = factorial_table();
  double s = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const double w = n == 0 ? 1.0 : std::pow(a_, power * static_cast<double>(n));
    s += fact[n] * w * f.coeffs()[n] * g.coeffs()[n];
  }
  return s;
}

}  // namespace bmc
