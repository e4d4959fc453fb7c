#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alusafe/formula.hpp"
#include "alusafe/operator.hpp"

namespace alusafe {

// Extensional encoding of a k-variable, width-w function: outputs[i] is the
// value at assignment i, where the first variable occupies the low w bits of
// i, the second the next w bits, and so on. For w=2, k=2 the whole vector
// packs into one 32-bit code (16 entries x 2 bits).
class FunctionVector {
 public:
  FunctionVector(Width w, int num_vars, std::vector<uint32_t> outputs);

  Width width() const { return width_; }
  int num_vars() const { return num_vars_; }
  const std::vector<uint32_t>& outputs() const { return outputs_; }
  size_t entries() const { return outputs_.size(); }

  bool is_constant() const;

  // Total packed size in bits: entries * width.
  int packed_bits() const;
  bool packable() const { return packed_bits() <= 64; }
  // Entry i occupies bits [i*w, (i+1)*w); assignment 0 is least significant.
  uint64_t code() const;  // usage_error when !packable
  static FunctionVector from_code(uint64_t code, Width w, int num_vars);

  // The packed value rendered in decimal, for any size (bignum conversion).
  std::string decimal_code() const;
  static FunctionVector from_decimal(const std::string& text, Width w, int num_vars);

  // Numeric order of the packed codes.
  bool operator<(const FunctionVector& other) const;
  bool operator==(const FunctionVector& other) const = default;

 private:
  Width width_;
  int num_vars_;
  std::vector<uint32_t> outputs_;
};

// Unpack assignment index i into variable values (var j = bits [j*w, (j+1)*w)).
void unpack_assignment(uint64_t index, Width w, int num_vars, uint32_t* values);

// Tabulate an operator as a function of its arity-many variables.
FunctionVector tabulate_operator(const Operator& op);

// Tabulate a compiled formula over an explicit variable list: assignment slot
// j holds the value of var_names[j]. Every formula variable must appear in
// var_names; extra names widen the assignment space.
FunctionVector tabulate_formula(const CompiledFormula& cf,
                                const std::vector<std::string>& var_names);

// The i-th projection (1-based) as a FunctionVector.
FunctionVector projection_vector(Width w, int num_vars, int index);
// The constant-c function.
FunctionVector constant_vector(Width w, int num_vars, uint32_t c);

}  // namespace alusafe
