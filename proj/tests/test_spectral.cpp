#include <cmath>
#include <random>

#include "bmc/errors.hpp"
#include "bmc/spectral.hpp"
#include "doctest.h"
#include "gauss_hermite_oracle.hpp"
#include "polynomial.hpp"

using namespace bmc;

namespace {

double sa(double a) { return 1.0 / std::sqrt(1.0 - a * a); }

oracle::Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  oracle::Poly p;
  p.c.resize(deg(rng) + 1);
  for (double& c : p.c) c = coef(rng);
  return p;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("pointwise products of low-degree polynomials") {
    std::mt19937_64 rng(7);
    const double s = sa(0.6);
    for (int t = 0; t < 50; ++t) {
      const oracle::Poly pf = random_poly(rng, 4), pg = random_poly(rng, 4);
      const SpectralFn prod = product(from_monomial(pf.c, s), from_monomial(pg.c, s));
      for (double x : {-2.0, -0.3, 0.0, 1.4}) {
        CHECK(std::fabs(prod(x) - pf(x) * pg(x)) <= 1e-12 * pf.abs_at(x) * pg.abs_at(x) + 1e-15);
      }
    }
  }

  TEST_CASE("factorial") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(20) == doctest::Approx(2432902008176640000.0));
  }

  TEST_CASE("hermite recurrence values") {
    std::vector<double> he(5);
    hermite_values(2.0, he);
    CHECK(he[0] == 1.0);
    CHECK(he[1] == 2.0);
    CHECK(he[2] == 3.0);   // u^2 - 1
    CHECK(he[3] == 2.0);   // u^3 - 3u
    CHECK(he[4] == -5.0);  // u^4 - 6u^2 + 3
  }

  TEST_CASE("monomials map to scaled Hermite coefficients") {
    const double s = 1.5;
    const double x1[] = {0.0, 1.0};
    const SpectralFn f = from_monomial(x1, s);
    CHECK(f.degree() == 1);
    CHECK(f.coeff(1) == doctest::Approx(s));
    const double x2[] = {0.0, 0.0, 1.0};
    const SpectralFn g = from_monomial(x2, s);
    CHECK(g.coeff(0) == doctest::Approx(s * s));
    CHECK(g.coeff(2) == doctest::Approx(s * s));
    for (double x : {-2.0, 0.3, 1.7}) {
      CHECK(f(x) == doctest::Approx(x));
      CHECK(g(x) == doctest::Approx(x * x));
    }
  }

  TEST_CASE("basis is orthogonal with norm n!") {
    const double s = sa(0.5);
    for (int m = 0; m < 6; ++m) {
      for (int n = 0; n < 6; ++n) {
        const double v = mu_inner(SpectralFn::basis(m, s), SpectralFn::basis(n, s));
        CHECK(v == doctest::Approx(m == n ? factorial(n) : 0.0));
      }
    }
  }

  TEST_CASE("Q acts diagonally with eigenvalues a^n") {
    const BarSpectrum q(0.6, 1.0);
    for (int n = 0; n < 6; ++n) {
      const SpectralFn g = q.apply_q(SpectralFn::basis(n, q.sigma_a()), 3);
      CHECK(g.coeff(n) == doctest::Approx(std::pow(0.6, 3 * n)));
    }
    CHECK(q.eigenvalue(4) == doctest::Approx(std::pow(0.6, 4)));
  }

  TEST_CASE("projectors") {
    const double s = sa(0.5);
    const double poly[] = {1.0, 2.0, 3.0, 4.0};
    const SpectralFn f = from_monomial(poly, s);
    const SpectralFn c = center(f);
    CHECK(mu_inner(c, SpectralFn::constant(1.0, s)) == doctest::Approx(0.0).epsilon(1e-12));
    const SpectralFn r = project_r(f);
    CHECK(r.degree() == 1);
    CHECK(r.coeff(1) == doctest::Approx(f.coeff(1)));
    const SpectralFn h = hat(f);
    CHECK(h.coeff(0) == 0.0);
    CHECK(h.coeff(1) == 0.0);
    CHECK(h.coeff(3) == doctest::Approx(f.coeff(3)));
    const double even[] = {0.0, 0.0, 1.0};
    CHECK(project_r(from_monomial(even, s)).is_zero());
  }

  TEST_CASE("P factorizes for the symmetric kernel") {
    const BarSpectrum q(0.4, 1.2);
    const double pf[] = {0.5, -1.0, 2.0};
    const double pg[] = {0.0, 1.0, 0.0, 1.0};
    const SpectralFn f = q.monomial(pf);
    const SpectralFn g = q.monomial(pg);
    const SpectralFn p = q.p_apply(f, g);
    for (double x : {-1.0, 0.0, 0.8}) {
      CHECK(p(x) == doctest::Approx(q.apply_q(f, 1)(x) * q.apply_q(g, 1)(x)));
    }
  }

  TEST_CASE("mu_inner_q matches materialized iterates") {
    const BarSpectrum q(0.7, 1.0);
    const double pf[] = {0.1, 0.2, 0.3, 0.4};
    const SpectralFn f = q.monomial(pf);
    CHECK(q.mu_inner_q(f, 2, f, 5) ==
          doctest::Approx(mu_inner(q.apply_q(f, 2), q.apply_q(f, 5))).epsilon(1e-13));
  }

  TEST_CASE("random polynomials agree with the quadrature oracle") {
    std::mt19937_64 rng(2024);
    for (double a : {0.2, 0.5, 0.85}) {
      const BarSpectrum q(a, 1.0);
      const double s = q.sigma_a();
      for (int t = 0; t < 20; ++t) {
        const oracle::Poly pf = random_poly(rng, 8), pg = random_poly(rng, 8);
        const SpectralFn f = q.monomial(pf.c), g = q.monomial(pg.c);
        auto fg = [&](double x) { return pf(x) * pg(x); };
        const double want = oracle::expect(fg, 0.0, s);
        const double scale = oracle::expect_abs(fg, 0.0, s);
        CHECK(std::fabs(mu_inner(f, g) - want) <= 1e-10 * scale);
        // product coefficients are the quadrature projections <mu, f g g_n> / n!
        const SpectralFn prod = product(f, g);
        std::vector<double> he(prod.degree() + 1);
        for (int n = 0; n <= prod.degree(); ++n) {
          auto proj = [&](double x) {
            hermite_values(x / s, he);
            return fg(x) * he[n] / factorial(n);
          };
          const double w = oracle::expect(proj, 0.0, s);
          const double sc = oracle::expect_abs(proj, 0.0, s);
          CHECK(std::fabs(prod.coeff(n) - w) <= 1e-10 * sc);
        }
        // Q^2 f(x) = E f(a^2 x + sigma_a sqrt(1 - a^4) Z)
        const SpectralFn qf = q.apply_q(f, 2);
        const double sd2 = s * std::sqrt(1.0 - std::pow(a, 4));
        for (double x : {-1.3, 0.5, 2.2}) {
          const double w = oracle::expect(pf, a * a * x, sd2);
          const double sc = oracle::expect([&](double y) { return pf.abs_at(y); }, a * a * x, sd2);
          CHECK(std::fabs(qf(x) - w) <= 1e-10 * sc);
        }
      }
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(SpectralFn(-1.0), ConfigError);
    CHECK_THROWS_AS(mu_inner(SpectralFn::basis(1, 1.0), SpectralFn::basis(1, 2.0)), ConfigError);
    std::vector<double> big(kDegreeCap + 2, 0.0);
    big.back() = 1.0;
    CHECK_THROWS_AS(SpectralFn(1.0, big), NumericRejection);
    const SpectralFn deg40 = SpectralFn::basis(40, 1.0);
    CHECK_THROWS_AS(product(deg40, deg40), NumericRejection);
    CHECK_THROWS_AS(BarSpectrum(1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(BarSpectrum(0.5, 0.0), ConfigError);
  }
}
