#include <cmath>

#include "bmc/errors.hpp"
#include "bmc/moments.hpp"
#include "bmc/variance.hpp"
#include "doctest.h"
#include "gauss_hermite_oracle.hpp"

using namespace bmc;

namespace {

// Geometric-series values for a single eigenfunction with eigenvalue lambda
// and squared norm nrm.
double single_closed(double nrm, double lambda) {
  const double l2 = lambda * lambda;
  return nrm * (1.0 - l2) / (1.0 - 2.0 * l2);
}
double tree_closed(double nrm, double lambda) {
  return 2.0 * single_closed(nrm, lambda) * (1.0 + lambda) / (1.0 - lambda);
}

// Var(M_{A_n}(f~)) under a stationary root from the exact moment formulas,
// integrated over the root with quadrature.
double exact_variance(const BarSpectrum& q, const SpectralFn& f, int n, bool tree) {
  const SpectralFn fc = center(f);
  auto second = [&](double x) {
    if (!tree) return exact_second_moment(q, fc, n, x);
    double s = 0.0;
    for (int g = 0; g <= n; ++g) {
      s += exact_second_moment(q, fc, g, x);
      for (int h = 0; h < g; ++h) s += 2.0 * exact_cross_moment(q, fc, fc, g, h, x);
    }
    return s;
  };
  return oracle::expect(second, 0.0, q.sigma_a());
}

}  // namespace

TEST_SUITE("variance") {
  TEST_CASE("constants have no fluctuation") {
    const BarSpectrum q(0.5, 1.0);
    const SpectralFn c = SpectralFn::constant(2.0, q.sigma_a());
    CHECK(sigma_sub(q, FunctionalSeq::single(c)).value == 0.0);
    CHECK(sigma_sub(q, FunctionalSeq::tree(c)).value == 0.0);
  }

  TEST_CASE("identity function, subcritical") {
    const BarSpectrum q(0.5, 1.0);
    const double px[] = {0.0, 1.0};
    const SpectralFn f = q.monomial(px);
    const VarianceReport r = sigma_sub(q, FunctionalSeq::single(f));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.tail_bound <= 1e-10 * 2.0);
    CHECK(r.converged);
    CHECK(sigma_sub(q, FunctionalSeq::tree(f)).value == doctest::Approx(12.0).epsilon(1e-9));
  }

  TEST_CASE("eigenfunction mixtures against geometric closed forms") {
    for (double a : {0.2, 0.5, 0.65, -0.6}) {
      const BarSpectrum q(a, 1.3);
      const double s = q.sigma_a();
      // x + x^2 - x^3/2 expanded on g_1, g_2, g_3 (orthogonal, so the series add)
      const double poly[] = {0.0, 1.0, 1.0, -0.5};
      const SpectralFn f = q.monomial(poly);
      double single = 0.0, tree = 0.0;
      for (int m = 1; m <= 3; ++m) {
        const double nrm = factorial(m) * f.coeff(m) * f.coeff(m);
        single += single_closed(nrm, std::pow(a, m));
        tree += tree_closed(nrm, std::pow(a, m));
      }
      (void)s;
      CHECK(sigma_sub(q, FunctionalSeq::single(f)).value == doctest::Approx(single).epsilon(1e-9));
      CHECK(sigma_sub(q, FunctionalSeq::tree(f)).value == doctest::Approx(tree).epsilon(1e-9));
    }
  }

  TEST_CASE("series equals the large-n limit of exact finite-n variances") {
    const BarSpectrum q(0.4, 1.0);
    const double poly[] = {0.3, 1.0, -0.7, 0.25};
    const SpectralFn f = q.monomial(poly);
    const int n = 40;
    const double g = exact_variance(q, f, n, false) / std::ldexp(1.0, n);
    CHECK(sigma_sub(q, FunctionalSeq::single(f)).value == doctest::Approx(g).epsilon(1e-8));
    const double t = exact_variance(q, f, n, true) / (std::ldexp(2.0, n) - 1.0);
    CHECK(sigma_sub(q, FunctionalSeq::tree(f)).value / 2.0 == doctest::Approx(t).epsilon(1e-8));
  }

  TEST_CASE("custom sequences") {
    const BarSpectrum q(0.5, 1.0);
    const double px[] = {0.0, 1.0};
    const SpectralFn f = q.monomial(px);
    const SpectralFn zero(q.sigma_a());
    // the function at lag 0 only reproduces the single shape
    CHECK(sigma_sub(q, FunctionalSeq::custom({f})).value == doctest::Approx(2.0).epsilon(1e-9));
    // lag 1 alone is scaled by 1/2
    CHECK(sigma_sub(q, FunctionalSeq::custom({zero, f})).value ==
          doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("critical regime") {
    const double a = 1.0 / std::sqrt(2.0);
    const BarSpectrum q(a, 1.0);
    const double px[] = {0.0, 1.0};
    const SpectralFn f = q.monomial(px);
    CHECK(sigma_crit(q, FunctionalSeq::single(f)).value == doctest::Approx(1.0).epsilon(1e-12));
    // exact variance from a centred point start equals n 2^n for every n
    for (int n : {3, 8, 20}) {
      CHECK(exact_second_moment(q, f, n, 0.0) / (n * std::ldexp(1.0, n)) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
    const double c1 = q.sigma_a();
    const double s = std::pow(2.0, -0.5);
    const double closed = a * a * c1 * c1 * (2.0 + 4.0 * s / (1.0 - s));
    const VarianceReport t = sigma_crit(q, FunctionalSeq::tree(f));
    CHECK(t.value == doctest::Approx(closed).epsilon(1e-9));
    CHECK(t.converged);
    const double even[] = {1.0, 0.0, 2.0, 0.0, -1.0};
    CHECK(sigma_crit(q, FunctionalSeq::single(q.monomial(even))).value == 0.0);
    const double mixed[] = {0.0, 1.0, 1.0};
    CHECK(sigma_crit(q, FunctionalSeq::single(q.monomial(mixed))).value ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("regime guards") {
    const double px[] = {0.0, 1.0};
    const BarSpectrum sup(0.8, 1.0);
    CHECK_THROWS_AS(sigma_sub(sup, FunctionalSeq::single(sup.monomial(px))), NumericRejection);
    CHECK_THROWS_AS(sigma_crit(sup, FunctionalSeq::single(sup.monomial(px))), NumericRejection);
    const BarSpectrum sub(0.5, 1.0);
    CHECK_THROWS_AS(sigma_crit(sub, FunctionalSeq::single(sub.monomial(px))), NumericRejection);
    CHECK_THROWS_AS(sigma_sub(sub, FunctionalSeq::single(sub.monomial(px)), 0.0), ConfigError);
  }

  TEST_CASE("martingale path") {
    const BarSpectrum q(0.85, 1.0);
    const BarParams p = BarParams::symmetric_bar(0.85, 1.0);
    const auto gens = simulate(InitialLaw::stationary(), p, 6, RandomStream(2));
    const double even[] = {0.0, 0.0, 1.0};
    for (double v : martingale_path(q, q.monomial(even), gens)) CHECK(v == 0.0);
    const double px[] = {0.0, 1.0};
    const auto path = martingale_path(q, q.monomial(px), gens);
    REQUIRE(path.size() == 7);
    CHECK(path[0] == doctest::Approx(gens[0].values[0]));
    double s3 = 0.0;
    for (double x : gens[3].values) s3 += x;
    CHECK(path[3] == doctest::Approx(s3 / std::pow(1.7, 3)));
    CHECK_THROWS_AS(martingale_path(BarSpectrum(0.0, 1.0), q.monomial(px), gens),
                    NumericRejection);
  }

  TEST_CASE("supercritical limits") {
    const BarSpectrum q(0.85, 1.0);
    const BarParams p = BarParams::symmetric_bar(0.85, 1.0);
    const auto gens = simulate(InitialLaw::stationary(), p, 5, RandomStream(3));
    const SupercriticalLimits c = supercritical_limits(q, SpectralFn::constant(1.0, q.sigma_a()), gens);
    CHECK(c.generation == 0.0);
    CHECK(c.tree == 0.0);
    const double px[] = {0.0, 1.0};
    const SupercriticalLimits l = supercritical_limits(q, q.monomial(px), gens);
    double g5 = 0.0, t5 = 0.0;
    for (int g = 0; g <= 5; ++g) {
      for (double x : gens[g].values) {
        t5 += x;
        if (g == 5) g5 += x;
      }
    }
    CHECK(l.generation == doctest::Approx(g5 / std::pow(1.7, 5)));
    CHECK(l.tree == doctest::Approx(t5 / std::pow(1.7, 5)));
    CHECK_THROWS_AS(supercritical_limits(BarSpectrum(0.5, 1.0), q.monomial(px), gens),
                    NumericRejection);
  }
}
