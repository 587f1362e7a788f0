#pragma once

#include <cstddef>
#include <span>

namespace bmc {

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double kurtosis = 0.0;  // m4 / m2^2, 3 for a Gaussian
};

// Two-pass moments in input order. Skewness and kurtosis are 0 when the
// sample is constant.
SampleMoments sample_moments(std::span<const double> xs);

double sample_variance(std::span<const double> xs);

// Standard error of the sample mean.
double standard_error(std::span<const double> xs);

double median(std::span<const double> xs);

// One-sample Kolmogorov-Smirnov distance between the empirical law of xs
// and N(mean, variance).
double ks_distance_normal(std::span<const double> xs, double mean, double variance);

// 5%-level critical value 1.36 / sqrt(n) of the KS distance.
double ks_threshold_5pct(std::size_t n);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // 0 when fewer than three points
};

// Ordinary least squares y = intercept + slope x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace bmc
