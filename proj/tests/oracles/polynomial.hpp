#pragma once

// Plain monomial-basis polynomials, evaluated by Horner. Deliberately
// independent of the Hermite machinery in the library.

#include <cmath>
#include <vector>

namespace oracle {

struct Poly {
  std::vector<double> c;  // c[k] x^k

  double operator()(double x) const {
    long double s = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return static_cast<double>(s);
  }
  // sum |c_k| |x|^k
  double abs_at(double x) const {
    double s = 0.0, p = 1.0;
    for (double ck : c) {
      s += std::fabs(ck) * p;
      p *= std::fabs(x);
    }
    return s;
  }
};

}  // namespace oracle
