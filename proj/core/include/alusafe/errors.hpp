#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alusafe {

// Caller passed something malformed: bad arity, mismatched widths,
// unresolvable operator name, out-of-bounds argument.
struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is outside the mathematical domain of an operation
// (e.g. correction_check with divisor zero, witness of a safe operator).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. `position` is a byte offset into the input where
// the problem was detected.
struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

// A configured resource bound (member count, memory) was exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace alusafe
