#pragma once

// Exact moments of M_{G_n}(f) = sum_{i in G_n} f(X_i) for the symmetric BAR
// started from X_root = x, by the many-to-one formulas:
//   E_x[M_{G_n}(f)]    = 2^n Q^n f(x)
//   E_x[M_{G_n}(f)^2]  = 2^n Q^n(f^2)(x)
//                        + sum_{k<n} 2^{n+k} Q^{n-k-1} P(Q^k f (x) Q^k f)(x)
//   E_x[M_{G_n}(f) M_{G_m}(g)] = 2^n Q^m(g Q^{n-m} f)(x)
//                        + sum_{k<m} 2^{n+k} Q^{m-k-1} P(Q^k g (x)_sym Q^{n-m+k} f)(x)
// Every term is assembled exactly in the Hermite basis.

#include "bmc/spectral.hpp"

namespace bmc {

double exact_mean(const BarSpectrum& q, const SpectralFn& f, int n, double x);

double exact_second_moment(const BarSpectrum& q, const SpectralFn& f, int n, double x);

// Requires n >= m >= 0.
double exact_cross_moment(const BarSpectrum& q, const SpectralFn& f, const SpectralFn& g,
                          int n, int m, double x);

}  // namespace bmc
