#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alusafe/operator.hpp"

namespace alusafe {

// The two-sided safety characterization: an operator combines safely with
// multiplication and three-input addition iff it takes the all-zero tuple to
// zero and every all-odd tuple to an odd output.

struct AnalyzeOptions {
  // Exhaustive all-odd scan while 2^((w-1)*arity) stays within this bound;
  // beyond it the verdict downgrades to a seeded random sample.
  uint64_t exhaustive_limit = uint64_t{1} << 26;
  uint64_t sample_count = 1'000'000;
  uint64_t seed = 1;
};

struct ConditionZero {
  bool pass = false;
  uint32_t value_at_zero = 0;  // k0 = f(0,...,0)
};

struct ConditionOdd {
  bool pass = false;
  std::vector<uint32_t> violating_tuple;  // lexicographically least violation
  uint32_t output = 0;                    // the even value z0 produced
};

struct SafetyReport {
  std::string op_name;
  int width_bits = 0;
  int arity = 0;
  ConditionZero condition_zero;
  ConditionOdd condition_odd;
  bool exhaustive = true;       // false when the odd scan was sampled
  uint64_t tuples_checked = 0;  // odd tuples examined
  uint64_t seed = 0;            // meaningful when sampled

  bool safe() const { return condition_zero.pass && condition_odd.pass; }
  std::string_view verdict() const { return safe() ? "SAFE" : "UNSAFE"; }
};

SafetyReport analyze(const Operator& op, const AnalyzeOptions& options = {});

// Safe variant of an operator: the zero point is forced to 0 and every
// all-odd input with an even output is bumped by 1 (mod 2^w). Everything
// else is untouched, so the result is within 1 of the original in uniform
// norm except possibly at the zero point. Requires a tabulatable shape.
Operator patch(const Operator& op);

// Pointwise (test != 0 ? g : h). Safe whenever g and h are safe, regardless
// of the test. All three must share width and arity; g, h must be
// tabulatable.
Operator patchwork(const Operator& test, const Operator& g, const Operator& h);

}  // namespace alusafe
