#pragma once

// Function algebra in the scaled Hermite basis g_n(x) = He_n(x / sigma_a),
// the eigenbasis of the symmetric BAR transition operator Q. Under the
// invariant law mu = N(0, sigma_a^2) the basis is orthogonal with
// <mu, g_m g_n> = n! 1{m = n}, and Q g_n = a^n g_n.

#include <span>
#include <vector>

namespace bmc {

inline constexpr int kDegreeCap = 64;

// n! as a double for n <= kDegreeCap.
double factorial(int n);

class SpectralFn {
 public:
  // The zero function.
  explicit SpectralFn(double sigma_a);
  // f = sum_n coeffs[n] g_n. Trailing negligible coefficients are trimmed.
  // Throws ConfigError for sigma_a <= 0 and NumericRejection past kDegreeCap.
  SpectralFn(double sigma_a, std::vector<double> coeffs);

  static SpectralFn constant(double c, double sigma_a);
  static SpectralFn basis(int n, double sigma_a);

  double sigma_a() const { return sigma_a_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int n) const;
  // Highest index with a nonzero coefficient; 0 for constants and zero.
  int degree() const;
  // Lowest index >= 1 with a nonzero coefficient, or -1 if none.
  int min_nonconstant_index() const;
  bool is_zero() const { return coeffs_.empty(); }

  // Pointwise value via the three-term Hermite recurrence.
  double operator()(double x) const;

  // ||f||^2 in L^2(mu).
  double norm_sq() const;

  SpectralFn operator+(const SpectralFn& other) const;
  SpectralFn operator-(const SpectralFn& other) const;
  SpectralFn operator*(double s) const;
  friend SpectralFn operator*(double s, const SpectralFn& f) { return f * s; }

 private:
  void trim();

  double sigma_a_;
  std::vector<double> coeffs_;
};

// He_0(u) .. He_n(u) by the recurrence He_{k+1} = u He_k - k He_{k-1}.
void hermite_values(double u, std::span<double> out);

// poly[k] is the coefficient of x^k.
SpectralFn from_monomial(std::span<const double> poly, double sigma_a);

// <mu, f g>. Throws ConfigError when the scales differ.
double mu_inner(const SpectralFn& f, const SpectralFn& g);

// Pointwise product by Hermite linearization.
SpectralFn product(const SpectralFn& f, const SpectralFn& g);

// f - <mu, f>.
SpectralFn center(const SpectralFn& f);
// Orthogonal projection onto span{g_1}.
SpectralFn project_r(const SpectralFn& f);
// center(f) - project_r(f).
SpectralFn hat(const SpectralFn& f);

// Operators that depend on the autoregressive coefficient a of the
// symmetric kernel: Q^k and P(f (x) g) = (Qf)(Qg).
class BarSpectrum {
 public:
  // Throws ConfigError unless |a| < 1 and sigma > 0.
  BarSpectrum(double a, double sigma);

  double a() const { return a_; }
  double sigma() const { return sigma_; }
  double sigma_a() const { return sigma_a_; }
  // a^n, the eigenvalue attached to g_n.
  double eigenvalue(int n) const;

  SpectralFn apply_q(const SpectralFn& f, int k) const;
  SpectralFn p_apply(const SpectralFn& f, const SpectralFn& g) const;
  // <mu, (Q^p f)(Q^q g)> without materializing the iterates.
  double mu_inner_q(const SpectralFn& f, int p, const SpectralFn& g,
                    int q) const;

  SpectralFn monomial(std::span<const double> poly) const {
    return from_monomial(poly, sigma_a_);
  }

 private:
  void check_scale(const SpectralFn& f) const;

  double a_;
  double sigma_;
  double sigma_a_;
};

}  // namespace bmc
