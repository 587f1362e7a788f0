#pragma once

// Brute-force moments of generation sums for the symmetric BAR started from
// a point x0. All node values of T_n are jointly Gaussian with
//   E X_u = a^{|u|} x0,
//   Cov(X_u, X_v) = a^{|u|-d} a^{|v|-d} Var(X_w),  w = last common ancestor, |w| = d,
//   Var(X_w) = sigma^2 (1 + a^2 + ... + a^{2(d-1)}),
// and mixed moments of a Gaussian pair come from counting Wick pairings.

#include <cmath>
#include <cstdint>
#include <vector>

#include "polynomial.hpp"

namespace oracle {

inline double double_factorial_odd(int k) {  // (k-1)!! for even k, 0 for odd k
  if (k % 2) return 0.0;
  double r = 1.0;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// E[Y1^i Y2^j] for centered Gaussians with covariance entries c11, c12, c22:
// choose k cross pairs, pair the remaining factors within each variable.
inline double wick(int i, int j, double c11, double c12, double c22) {
  double s = 0.0, fact = 1.0;
  for (int k = 0; k <= std::min(i, j); ++k) {
    if (k > 0) fact *= k;
    if ((i - k) % 2 || (j - k) % 2) continue;
    s += binom(i, k) * binom(j, k) * fact * std::pow(c12, k) * double_factorial_odd(i - k) *
         std::pow(c11, (i - k) / 2) * double_factorial_odd(j - k) * std::pow(c22, (j - k) / 2);
  }
  return s;
}

// E[f(m1 + Y1) g(m2 + Y2)] via binomial expansion and Wick counts.
inline double pair_moment(const Poly& f, const Poly& g, double m1, double m2, double c11,
                          double c12, double c22) {
  double s = 0.0;
  for (std::size_t p = 0; p < f.c.size(); ++p) {
    for (std::size_t q = 0; q < g.c.size(); ++q) {
      if (f.c[p] == 0.0 || g.c[q] == 0.0) continue;
      for (int i = 0; i <= static_cast<int>(p); ++i) {
        for (int j = 0; j <= static_cast<int>(q); ++j) {
          s += f.c[p] * g.c[q] * binom(p, i) * binom(q, j) * std::pow(m1, p - i) *
               std::pow(m2, q - j) * wick(i, j, c11, c12, c22);
        }
      }
    }
  }
  return s;
}

// E[M_{G_n}(f) M_{G_m}(g)] by summing over all 2^n x 2^m node pairs.
inline double brute_cross_moment(double a, double sigma, double x0, const Poly& f, const Poly& g,
                                 int n, int m) {
  auto var_at = [&](int d) {
    double v = 0.0;
    for (int j = 0; j < d; ++j) v += std::pow(a, 2 * j);
    return sigma * sigma * v;
  };
  double s = 0.0;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
      // depth of the last common ancestor of (n, u) and (m, v)
      int d = std::min(n, m);
      while (d > 0 && (u >> (n - d)) != (v >> (m - d))) --d;
      const double vd = var_at(d);
      const double c11 = var_at(n);
      const double c22 = var_at(m);
      const double c12 = std::pow(a, n - d) * std::pow(a, m - d) * vd;
      s += pair_moment(f, g, std::pow(a, n) * x0, std::pow(a, m) * x0, c11, c12, c22);
    }
  }
  return s;
}

}  // namespace oracle
