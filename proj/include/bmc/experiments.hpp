#pragma once

// Monte-Carlo studies built on the simulator: CLT checks in the sub-critical
// and critical regimes, super-critical martingale limits, and the slope of
// log Var(|A_n|^{-1} M_{A_n}(f)) against log |A_n| across a grid of rates.

#include <cstdint>
#include <string>
#include <vector>

#include "bmc/stats.hpp"
#include "bmc/tree_sim.hpp"
#include "bmc/variance.hpp"

namespace bmc {

struct CltResult {
  int n = 0;
  Regime regime = Regime::subcritical;
  std::vector<double> statistics;  // one per replica
  double empirical_variance = 0.0;
  double series_variance = 0.0;
  VarianceReport series;
  double ks_distance = 0.0;
  double ks_threshold = 0.0;
  bool ks_skipped = false;  // limit law is a point mass
  SampleMoments moments;
};

// Throws NumericRejection in the super-critical regime.
CltResult clt_study(const ExperimentConfig& cfg);

struct MartingaleResult {
  std::vector<double> mean;      // mean over replicas of M_n, n = 0..depth
  std::vector<double> mean_se;   // its standard error
  std::vector<double> l1_diffs;  // mean of |M_{n+1} - M_n|, n = 0..depth-1
};

// M_n = (2a)^{-n} M_{G_n}(R f) across replicas. Throws NumericRejection
// for a = 0.
MartingaleResult martingale_study(const ExperimentConfig& cfg);

struct SupercriticalResult {
  std::vector<double> generation_limits;  // (2 alpha)^{-n} M_{G_n}(f~) per replica
  std::vector<double> tree_limits;        // (2 alpha)^{-n} M_{T_n}(f~) per replica
  double ratio_median = 0.0;              // median of tree / generation
  double expected_ratio = 0.0;            // 2 alpha / (2 alpha - 1)
  std::vector<double> martingale_l1_diffs;
  MartingaleResult martingale;
};

// Throws NumericRejection unless 2a^2 > 1 and a > 0.
SupercriticalResult supercritical_study(const ExperimentConfig& cfg);

double h1(double alpha);
double h2(double alpha);

struct TestFunctionSpec {
  std::string label;
  std::vector<double> poly;  // monomial coefficients
};

struct SlopeStudyConfig {
  std::vector<double> alphas;
  std::vector<TestFunctionSpec> functions;
  int n_min = 5;
  int n_max = 12;
  int replicas = 500;
  int outer_repeats = 20;
  std::vector<Target> targets{Target::generation};
  double sigma = 1.0;
  InitialLaw nu = InitialLaw::stationary();
  std::uint64_t master_seed = 1;
  int threads = 0;

  void validate() const;
};

struct SlopeResult {
  double alpha = 0.0;
  int n_min = 0;
  int n_max = 0;
  double slope = 0.0;  // NaN when fewer than two usable points remain
  double stderr_ = 0.0;
  int replicas = 0;
  Target target = Target::generation;
  std::string f_label;
  int outer_repeat = 0;
  std::vector<int> omitted;  // depths dropped for degenerate variance
};

// One row per (alpha, outer repeat, function, target), in that nesting
// order. Every function and target is evaluated on the same simulated
// trees; stream ids depend only on (alpha index, repeat, replica).
std::vector<SlopeResult> slope_study(const SlopeStudyConfig& cfg);

// OLS slope of log(variances) against log(sizes).
LinearFit fit_log_slope(std::span<const double> sizes, std::span<const double> variances);

struct SlopeSummary {
  double alpha = 0.0;
  Target target = Target::generation;
  std::string f_label;
  double mean = 0.0;
  double sd = 0.0;  // across outer repeats
  int count = 0;
};

// Mean and spread of slopes over outer repeats, per (alpha, function, target).
std::vector<SlopeSummary> summarize_slopes(const std::vector<SlopeResult>& rows);

}  // namespace bmc
