#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

// Bad user input (parameters out of range, malformed descriptors).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request the numerics refuse: wrong regime, degree budget
// exceeded, operation undefined for the given kernel.
class NumericRejection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested work exceeds a hard resource cap (tree depth, memory).
class ResourceCap : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace bmc
