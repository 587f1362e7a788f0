#include <cmath>
#include <cstdio>
#include <sstream>

#include "bmc/cli.hpp"
#include "bmc/errors.hpp"

namespace bmc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v)) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<double> parse_test_function(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty test function");
  if (t == "x") return {0.0, 1.0};
  if (t.rfind("x^", 0) == 0) {
    const double p = to_real(t.substr(2), "power");
    if (p != std::floor(p) || p < 0 || p > 8) {
      throw ConfigError("monomial power must be an integer in [0, 8]");
    }
    std::vector<double> poly(static_cast<std::size_t>(p) + 1, 0.0);
    poly.back() = 1.0;
    return poly;
  }
  std::vector<double> poly;
  for (const auto& part : split(t, ',')) poly.push_back(to_real(part, "coefficient"));
  if (poly.size() > 9) throw ConfigError("coefficient lists are limited to degree 8");
  return poly;
}

InitialLaw parse_initial_law(const std::string& text) {
  const std::string t = trim(text);
  if (t == "stationary") return InitialLaw::stationary();
  if (t.rfind("dirac:", 0) == 0) return InitialLaw::dirac(to_real(t.substr(6), "dirac point"));
  if (t.rfind("gaussian:", 0) == 0) {
    const auto parts = split(t.substr(9), ',');
    if (parts.size() != 2) throw ConfigError("gaussian initial law needs mean,var");
    return InitialLaw::gaussian(to_real(parts[0], "mean"), to_real(parts[1], "variance"));
  }
  throw ConfigError("unknown initial law '" + text + "'");
}

std::string format_initial_law(const InitialLaw& nu) {
  switch (nu.kind) {
    case InitialLaw::Kind::dirac:
      return "dirac:" + fmt(nu.x0);
    case InitialLaw::Kind::gaussian:
      return "gaussian:" + fmt(nu.mean) + "," + fmt(nu.var);
    case InitialLaw::Kind::stationary:
      break;
  }
  return "stationary";
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  std::vector<double> grid;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw ConfigError("grid ranges are lo:hi:step");
    const double lo = to_real(parts[0], "grid start");
    const double hi = to_real(parts[1], "grid end");
    const double step = to_real(parts[2], "grid step");
    if (!(step > 0.0) || hi < lo) throw ConfigError("grid needs step > 0 and hi >= lo");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 100000) throw ResourceCap("grid has too many points");
    for (long i = 0; i < count; ++i) {
      // snap so 0.05:0.95:0.05 gives 0.15 rather than 0.15000000000000002
      const double v = lo + static_cast<double>(i) * step;
      grid.push_back(std::round(v * 1e12) / 1e12);
    }
  } else {
    for (const auto& part : split(t, ',')) grid.push_back(to_real(part, "grid value"));
  }
  if (grid.empty()) throw ConfigError("empty grid");
  return grid;
}

std::uint64_t config_digest(const nlohmann::json& config) {
  // nlohmann::json objects keep keys sorted, so dump() is already canonical
  const std::string s = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace bmc::cli
