#include "bmc/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bmc/errors.hpp"

namespace bmc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr std::uint32_t kSequentialTag = 0u;
constexpr std::uint32_t kInitialTag = 0xFFFFFFFFu;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

// 53-bit uniform strictly inside (0, 1).
inline double to_open_unit(std::uint32_t lo, std::uint32_t hi) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, ctr[0], lo0, hi0);
    mulhilo(kMul1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double q = p - 0.5;
  double val;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    val = q *
          (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                67265.770927008700853) * r + 45921.953931549871457) * r +
              13731.693765509461125) * r + 1971.5909503065514427) * r +
            133.14166789178437745) * r + 3.387132872796366608) /
          (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
                39307.89580009271061) * r + 21213.794301586595867) * r +
              5394.1960214247511077) * r + 687.1870074920579083) * r +
            42.313330701600911252) * r + 1.0);
    return val;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

RandomStream::RandomStream(std::uint64_t master_seed)
    : key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)} {}

RandomStream RandomStream::replica(std::uint64_t r) const {
  if (r > 0xFFFFFFFFull) throw ResourceCap("replica index exceeds 32 bits");
  RandomStream s = *this;
  s.ctr_ = {0u, 0u, kSequentialTag, static_cast<std::uint32_t>(r)};
  return s;
}

RandomStream RandomStream::node(std::uint32_t gen, std::uint64_t pos) const {
  if (pos > 0xFFFFFFFFull || gen >= kInitialTag - 1) {
    throw ResourceCap("tree index exceeds the stream address space");
  }
  RandomStream s = *this;
  s.ctr_[0] = 0u;
  s.ctr_[1] = static_cast<std::uint32_t>(pos);
  s.ctr_[2] = gen + 1u;
  return s;
}

RandomStream RandomStream::initial() const {
  RandomStream s = *this;
  s.ctr_[0] = 0u;
  s.ctr_[1] = 0u;
  s.ctr_[2] = kInitialTag;
  return s;
}

std::uint64_t RandomStream::master_seed() const {
  return (static_cast<std::uint64_t>(key_[1]) << 32) | key_[0];
}

PhiloxCounter RandomStream::next_block() {
  const PhiloxCounter out = philox4x32(ctr_, key_);
  ++ctr_[0];
  return out;
}

double RandomStream::next_uniform() {
  const auto b = next_block();
  return to_open_unit(b[0], b[1]);
}

double RandomStream::next_normal() { return normal_quantile(next_uniform()); }

std::pair<double, double> RandomStream::next_normal_pair() {
  const auto b = next_block();
  return {normal_quantile(to_open_unit(b[0], b[1])),
          normal_quantile(to_open_unit(b[2], b[3]))};
}

}  // namespace bmc
