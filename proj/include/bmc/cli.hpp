#pragma once

// Command-line front end. run() never throws: configuration problems exit 2,
// numeric rejections 3, resource caps 4.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bmc/experiments.hpp"
#include "json.hpp"

namespace bmc::cli {

inline constexpr const char* kVersion = "0.1.0";

// "x", "x^p" (p <= 8), a constant, or comma separated monomial coefficients
// c0,c1,... .
std::vector<double> parse_test_function(const std::string& text);

// "stationary", "dirac:x0" or "gaussian:mean,var".
InitialLaw parse_initial_law(const std::string& text);
std::string format_initial_law(const InitialLaw& nu);

// "lo:hi:step" (inclusive, tolerant to rounding) or "v1,v2,...".
std::vector<double> parse_grid(const std::string& text);

// FNV-1a 64 of the compact dump with sorted keys.
std::uint64_t config_digest(const nlohmann::json& config);

// 17 significant digits.
std::string fmt(double v);

struct SlopeCurve {
  std::string label;
  std::vector<double> alpha;
  std::vector<double> mean;
  std::vector<double> sd;
};

// Mean slope with +-2 sd band against h1 (red) and h2 (blue, dashed).
std::string slopes_svg(const std::vector<SlopeCurve>& curves, const std::string& title);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace bmc::cli
