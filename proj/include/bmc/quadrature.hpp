#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace bmc {

// Gauss-Hermite rule for the weight exp(-t^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the orthonormal Hermite
// recurrence. Rules are computed once per order and cached.
const GaussHermiteRule& gauss_hermite(int order);

// E[f(mean + sd * G)] with G ~ N(0, 1).
template <class F>
double normal_expectation(F&& f, double mean, double sd, int order = 64) {
  const auto& rule = gauss_hermite(order);
  const double scale = sd * std::numbers::sqrt2;
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mean + scale * rule.nodes[i]);
  }
  return s / std::sqrt(std::numbers::pi);
}

}  // namespace bmc
