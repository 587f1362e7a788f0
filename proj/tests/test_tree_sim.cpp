#include <cmath>

#include "bmc/errors.hpp"
#include "bmc/tree_sim.hpp"
#include "doctest.h"

using namespace bmc;

TEST_SUITE("tree_sim") {
  TEST_CASE("tree indexing") {
    const TreeIndex r = TreeIndex::root();
    CHECK(r.child(0) == TreeIndex{1, 0});
    CHECK(r.child(1).child(1) == TreeIndex{2, 3});
    CHECK(TreeIndex{5, 13}.child(0).parent() == TreeIndex{5, 13});
    CHECK(TreeIndex::generation_size(10) == 1024);
    CHECK(TreeIndex::tree_size(10) == 2047);
  }

  TEST_CASE("full simulation shape and reproducibility") {
    const BarParams p = BarParams::symmetric_bar(0.5, 1.0);
    const RandomStream s(3);
    const auto gens = simulate(InitialLaw::dirac(2.0), p, 6, s);
    REQUIRE(gens.size() == 7);
    for (int g = 0; g <= 6; ++g) {
      CHECK(gens[g].gen == g);
      CHECK(gens[g].values.size() == (std::size_t{1} << g));
    }
    CHECK(gens[0].values[0] == 2.0);
    const auto again = simulate(InitialLaw::dirac(2.0), p, 6, s);
    CHECK(again[6].values == gens[6].values);

    std::vector<std::vector<double>> streamed;
    simulate_streaming(InitialLaw::dirac(2.0), p, 6, s,
                       [&](const GenerationBuffer& b) { streamed.push_back(b.values); });
    REQUIRE(streamed.size() == 7);
    for (int g = 0; g <= 6; ++g) CHECK(streamed[g] == gens[g].values);
  }

  TEST_CASE("noise-free tree follows the recursion") {
    BarParams p{0.5, -0.25, 1.0, 0.0, 1e-300, 0.0};
    const auto gens = simulate(InitialLaw::dirac(4.0), p, 2, RandomStream(1));
    CHECK(gens[1].values[0] == doctest::Approx(3.0));
    CHECK(gens[1].values[1] == doctest::Approx(-1.0));
    CHECK(gens[2].values[1] == doctest::Approx(-0.75));
    CHECK(gens[2].values[3] == doctest::Approx(0.25));
  }

  TEST_CASE("initial laws") {
    const BarParams p = BarParams::symmetric_bar(0.5, 1.0);
    RandomStream rng(8);
    CHECK(InitialLaw::dirac(1.5).sample(p, rng) == 1.5);
    BarParams asym = p;
    asym.b0 = 1.0;
    CHECK_THROWS_AS(InitialLaw::stationary().sample(asym, rng), NumericRejection);
    CHECK_THROWS_AS(InitialLaw::gaussian(0.0, -1.0), ConfigError);
  }

  TEST_CASE("depth cap") {
    const BarParams p = BarParams::symmetric_bar(0.5, 1.0);
    CHECK_THROWS_AS(simulate(InitialLaw::stationary(), p, kMaxDepth + 1, RandomStream(1)),
                    ResourceCap);
    CHECK(full_tree_bytes(10) == 2047 * sizeof(double));
  }

  TEST_CASE("additive functionals") {
    const BarParams p = BarParams::symmetric_bar(0.5, 1.0);
    const auto gens = simulate(InitialLaw::stationary(), p, 8, RandomStream(4));
    const double poly[] = {1.0, 0.0, 1.0};
    const SpectralFn f = from_monomial(poly, p.sigma_a());
    double direct = 0.0;
    for (double x : gens[8].values) direct += 1.0 + x * x;
    CHECK(m_sum(gens[8], f) == doctest::Approx(direct).epsilon(1e-13));

    const SpectralFn fs[] = {f};
    const auto sums = generation_sums(InitialLaw::stationary(), p, 8, RandomStream(4), fs);
    for (int g = 0; g <= 8; ++g) CHECK(sums[0][g] == m_sum(gens[g], f));

    // |G_n|^{-1/2} times the sum over generations of centered f
    const SpectralFn fc = center(f);
    double tree = 0.0;
    for (int g = 0; g <= 8; ++g) tree += m_sum(gens[g], fc);
    CHECK(n_statistic(gens, FunctionalSeq::tree(f), 8) == doctest::Approx(tree / 16.0).epsilon(1e-12));
    CHECK(n_statistic(gens, FunctionalSeq::single(f), 8) ==
          doctest::Approx(m_sum(gens[8], fc) / 16.0).epsilon(1e-12));
  }

  TEST_CASE("replicate is independent of the thread count") {
    ExperimentConfig cfg;
    cfg.params = BarParams::symmetric_bar(0.6, 1.0);
    cfg.n = 7;
    cfg.replicas = 37;
    cfg.master_seed = 99;
    cfg.threads = 1;
    const auto one = replicate(cfg);
    for (int t : {2, 3, 8}) {
      cfg.threads = t;
      CHECK(replicate(cfg) == one);
    }
    cfg.master_seed = 100;
    CHECK(replicate(cfg) != one);
  }

  TEST_CASE("normalizations") {
    ExperimentConfig cfg;
    cfg.params = BarParams::symmetric_bar(0.5, 1.0);
    cfg.f_poly = {3.0};
    cfg.n = 5;
    cfg.replicas = 4;
    for (double v : replicate(cfg)) CHECK(v == 0.0);
    cfg.normalization = Normalization::mean;
    for (double v : replicate(cfg)) CHECK(v == doctest::Approx(3.0));
    cfg.replicas = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.replicas = 2;
    cfg.n = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}
