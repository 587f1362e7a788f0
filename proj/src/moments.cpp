#include "bmc/moments.hpp"

#include <cmath>

#include "bmc/errors.hpp"

namespace bmc {

namespace {

// Kahan-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double y = v - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_depth(int n) {
  if (n < 0) throw ConfigError("generation index must be non-negative");
}

}  // namespace

double exact_mean(const BarSpectrum& q, const SpectralFn& f, int n, double x) {
  check_depth(n);
  return std::ldexp(q.apply_q(f, n)(x), n);
}

double exact_second_moment(const BarSpectrum& q, const SpectralFn& f, int n, double x) {
  return exact_cross_moment(q, f, f, n, n, x);
}

double exact_cross_moment(const BarSpectrum& q, const SpectralFn& f, const SpectralFn& g,
                          int n, int m, double x) {
  check_depth(m);
  if (n < m) throw ConfigError("exact_cross_moment requires n >= m");
  CompensatedSum total;
  total.add(std::ldexp(q.apply_q(product(g, q.apply_q(f, n - m)), m)(x), n));
  for (int k = 0; k < m; ++k) {
    const SpectralFn inner = q.p_apply(q.apply_q(g, k), q.apply_q(f, n - m + k));
    total.add(std::ldexp(q.apply_q(inner, m - k - 1)(x), n + k));
  }
  return total.value();
}

}  // namespace bmc
