#pragma once

// Counter-based random streams. Every draw is a pure function of
// (master seed, replica, generation, position, draw index), so simulations
// are bit-reproducible regardless of how work is scheduled across threads.

#include <array>
#include <cstdint>
#include <utility>

namespace bmc {

// Philox4x32 with 10 rounds.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

// Inverse of the standard normal CDF (Wichura's AS241), p in (0, 1).
double normal_quantile(double p);
// Standard normal CDF.
double normal_cdf(double x);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed);

  // Independent sub-streams. Replica ids and node positions must fit in
  // 32 bits.
  RandomStream replica(std::uint64_t r) const;
  RandomStream node(std::uint32_t gen, std::uint64_t pos) const;
  // Sub-stream reserved for the root's initial draw.
  RandomStream initial() const;

  std::uint64_t master_seed() const;

  PhiloxCounter next_block();
  double next_uniform();
  double next_normal();
  // Two independent N(0,1) values from a single block.
  std::pair<double, double> next_normal_pair();

 private:
  PhiloxKey key_;
  PhiloxCounter ctr_{};
};

}  // namespace bmc
