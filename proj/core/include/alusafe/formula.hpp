#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alusafe/operator.hpp"

namespace alusafe {

// An expression tree over named operators and unknown-input variables.
// Leaves are variables; there are no constant literals (the formula language
// models an attacker who holds no encrypted constants). Nodes are immutable
// and may be shared, so large repeated subterms stay cheap.
class Formula {
 public:
  using Ptr = std::shared_ptr<const Formula>;

  static Ptr var(std::string name);
  static Ptr apply(std::string op_name, std::vector<Ptr> args);

  bool is_var() const { return args_.empty(); }
  const std::string& symbol() const { return symbol_; }  // var name or operator name
  const std::vector<Ptr>& args() const { return args_; }

  // Sorted, deduplicated variable names.
  std::vector<std::string> variables() const;

 private:
  Formula(std::string symbol, std::vector<Ptr> args)
      : symbol_(std::move(symbol)), args_(std::move(args)) {}
  std::string symbol_;
  std::vector<Ptr> args_;
};

// Grammar: formula := var | "(" opname formula+ ")", names [a-z][a-z0-9_]*.
// Numeric literals are rejected at the syntax level.
Formula::Ptr parse_formula(std::string_view text);
std::string print_formula(const Formula::Ptr& f);

// One-shot checked evaluation.
uint32_t eval_formula(const Formula::Ptr& f, const OperatorSet& ops,
                      const std::map<std::string, uint32_t>& assignment);

// A formula validated and flattened against an operator set: every operator
// resolves with matching arity, shared subterms are evaluated once. Evaluation
// takes variable values in the order of variables() (sorted).
class CompiledFormula {
 public:
  CompiledFormula(Formula::Ptr f, const OperatorSet& ops);

  const std::vector<std::string>& variables() const { return vars_; }
  Width width() const { return width_; }
  size_t node_count() const { return steps_.size(); }
  const Formula::Ptr& formula() const { return source_; }

  uint32_t eval(std::span<const uint32_t> var_values) const;
  // Scratch-reusing variant for tight loops.
  uint32_t eval(std::span<const uint32_t> var_values, std::vector<uint32_t>& scratch) const;

 private:
  struct Step {
    const Operator* op;   // null for variable loads
    int var_index;        // for variable loads
    std::vector<int> args;  // slot indices of children
  };
  Formula::Ptr source_;
  Width width_;
  std::vector<std::string> vars_;
  std::vector<Step> steps_;
};

// The canonical variable names for k generated unknowns: x, y, z for k <= 3,
// zero-padded x01..xNN beyond (lexicographic order == declaration order).
std::vector<std::string> canonical_var_names(int k);

// n * x as a formula using only add3 on a shared subterm: ((x+x+x)+x+x)+...
// Uses (n-1)/2 add3 nodes; n must be odd (even multiples are not constructible
// from parity-preserving addition alone).
Formula::Ptr scalar_mul_formula(uint32_t n_odd, const Formula::Ptr& operand);

}  // namespace alusafe
