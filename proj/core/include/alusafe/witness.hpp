#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alusafe/formula.hpp"
#include "alusafe/safety.hpp"

namespace alusafe {

// A verified constant-producing construction over an unsafe operator,
// assembled from the operator itself plus mul, add3 and the parity collapse
// g(x) = x^(2^w) (itself w-fold repeated self-multiplication).

enum class WitnessKind {
  constant_formula,              // one unknown; constant on every input
  parity_coverage_computation,   // two unknowns; constant whenever the input
                                 // multiset contains an odd and an even value
};

struct WitnessVerification {
  bool verified = false;
  bool exhaustive = true;
  uint64_t inputs_checked = 0;
};

struct Witness {
  WitnessKind kind = WitnessKind::constant_formula;
  std::string op_name;
  int width_bits = 0;
  Formula::Ptr formula;
  uint32_t claimed_constant = 0;

  // derivation record
  std::string case_name;                   // zero_point_a..d | odd_violation
  std::optional<uint32_t> k0;              // f(0,...,0)
  std::optional<uint32_t> k1;              // f(1,...,1)
  std::vector<uint32_t> violating_tuple;   // odd-violation tuple (x1, y1, ...)
  std::optional<uint32_t> odd_scalar;      // n with y1 = n*x1 (arity 2)

  WitnessVerification verification;
};

// The ambient operators a witness formula may mention.
OperatorSet witness_operator_set(const Operator& op);

// Necessity of condition (i): requires f(0,...,0) != 0, else domain_error.
Witness witness_zero_violation(const Operator& op);

// Necessity of condition (ii): requires a passing zero condition and a
// failing odd condition, else domain_error.
Witness witness_odd_violation(const Operator& op);

// Dispatch on the analysis verdict; domain_error when the operator is safe.
Witness make_witness(const Operator& op);

// Recompute a witness's verification record from scratch.
WitnessVerification verify_witness(const Witness& w, const Operator& op);

}  // namespace alusafe
