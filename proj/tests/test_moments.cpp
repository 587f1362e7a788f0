#include <cmath>

#include "bmc/errors.hpp"
#include "bmc/moments.hpp"
#include "doctest.h"
#include "isserlis_oracle.hpp"

using namespace bmc;

TEST_SUITE("moments") {
  TEST_CASE("first moment") {
    const BarSpectrum q(0.3, 1.0);
    const double px[] = {0.0, 1.0};
    const SpectralFn f = q.monomial(px);
    for (int n : {0, 1, 4}) {
      CHECK(exact_mean(q, f, n, 2.0) == doctest::Approx(std::ldexp(1.0, n) * std::pow(0.3, n) * 2.0));
    }
    const double one[] = {1.0};
    CHECK(exact_mean(q, q.monomial(one), 6, -3.0) == doctest::Approx(64.0));
  }

  TEST_CASE("second moment of the constant counts pairs") {
    const BarSpectrum q(0.5, 1.0);
    const double one[] = {1.0};
    CHECK(exact_second_moment(q, q.monomial(one), 5, 0.7) == doctest::Approx(1024.0));
    CHECK(exact_cross_moment(q, q.monomial(one), q.monomial(one), 5, 2, 0.7) ==
          doctest::Approx(128.0));
  }

  TEST_CASE("brute-force joint-Gaussian enumeration, depth up to 3") {
    for (double a : {0.3, 0.85}) {
      const BarSpectrum q(a, 1.0);
      for (double x0 : {0.0, 1.0}) {
        for (int p = 1; p <= 3; ++p) {
          oracle::Poly f;
          f.c.assign(p + 1, 0.0);
          f.c[p] = 1.0;
          const SpectralFn sf = q.monomial(f.c);
          for (int n = 0; n <= 3; ++n) {
            const double want = oracle::brute_cross_moment(a, 1.0, x0, f, f, n, n);
            CHECK(exact_second_moment(q, sf, n, x0) == doctest::Approx(want).epsilon(1e-10));
          }
          oracle::Poly g{{0.5, -1.0, 0.0, 2.0}};
          const SpectralFn sg = q.monomial(g.c);
          const double want = oracle::brute_cross_moment(a, 1.0, x0, f, g, 3, 1);
          CHECK(exact_cross_moment(q, sf, sg, 3, 1, x0) == doctest::Approx(want).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("argument checks") {
    const BarSpectrum q(0.5, 1.0);
    const SpectralFn f = SpectralFn::basis(1, q.sigma_a());
    CHECK_THROWS_AS(exact_cross_moment(q, f, f, 1, 2, 0.0), ConfigError);
    CHECK_THROWS_AS(exact_mean(q, f, -1, 0.0), ConfigError);
  }
}
