#include <cmath>

#include "bmc/errors.hpp"
#include "bmc/quadrature.hpp"
#include "doctest.h"
#include "gauss_hermite_oracle.hpp"

using namespace bmc;

TEST_SUITE("quadrature") {
  TEST_CASE("nodes and weights match Golub-Welsch") {
    for (int order : {8, 32, 64}) {
      const GaussHermiteRule& r = gauss_hermite(order);
      const oracle::Rule o = oracle::probabilists_rule(order);
      REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
      // physicists' nodes t relate to probabilists' nodes by x = sqrt(2) t
      std::vector<double> t(r.nodes.begin(), r.nodes.end());
      std::sort(t.begin(), t.end());
      std::vector<double> x = o.nodes;
      std::sort(x.begin(), x.end());
      for (int i = 0; i < order; ++i) {
        CHECK(std::sqrt(2.0) * t[i] == doctest::Approx(x[i]).epsilon(1e-12));
      }
      double wsum = 0.0;
      for (double w : r.weights) wsum += w;
      CHECK(wsum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    }
  }

  TEST_CASE("normal moments are exact") {
    CHECK(normal_expectation([](double x) { return x * x; }, 1.0, 2.0) == doctest::Approx(5.0));
    CHECK(normal_expectation([](double x) { return std::pow(x, 4); }, 0.0, 1.0) ==
          doctest::Approx(3.0));
    CHECK(normal_expectation([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-13));
  }

  TEST_CASE("order bounds") {
    CHECK_THROWS_AS(gauss_hermite(0), ConfigError);
    CHECK_THROWS_AS(gauss_hermite(513), ConfigError);
  }
}
