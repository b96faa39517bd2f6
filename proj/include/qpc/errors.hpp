#pragma once

#include <stdexcept>
#include <string>

namespace qpc {

// Raised when an operation receives arguments outside its domain
// (dimension, basis index, shift amount, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a protocol or experiment configuration violates one of the
// arithmetic constraints tying n, d, r, l and C together.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qpc
