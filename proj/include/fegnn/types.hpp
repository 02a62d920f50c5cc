#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fegnn {

using Index = std::int32_t;

/// Bad user-supplied data (files, CLI arguments, labels out of range).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller broke an API precondition (shape mismatch, asymmetric input).
struct contract_error : std::runtime_error {
  explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Computation produced non-finite values or failed to converge.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fegnn
