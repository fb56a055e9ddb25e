#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace raptor {

// Invalid parameters, malformed files, violated preconditions.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation refused because the predicted work/key count exceeds its guard.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(const std::string& what, uint64_t predicted)
      : std::runtime_error(what + " (predicted size " + std::to_string(predicted) + ")"),
        predicted_size(predicted) {}
  uint64_t predicted_size;
};

}  // namespace raptor
