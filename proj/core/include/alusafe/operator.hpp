#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alusafe/width.hpp"

namespace alusafe {

// Value-level semantics of the builtin operators. Everything is total and
// reduces mod 2^w where a width is involved.

// floor(x/y); division by zero yields 0 for every x.
uint32_t div_classical(uint32_t x, uint32_t y);

// div_classical, except the quotient is bumped by 1 (mod 2^w) when x and y
// are both odd but the classical quotient is even. Keeps odd/odd quotients
// odd and leaves the zero point at 0.
uint32_t safe_div(uint32_t x, uint32_t y, Width w);

// True iff the quotient q was corrected, decided by whether q*y falls in
// (x-y, x]. Computed in unbounded integer arithmetic (q*y can exceed
// 2^w - 1 after a correction). Throws domain_error when y == 0.
bool correction_check(uint32_t x, uint32_t y, uint32_t q);

// x^(2^w) mod 2^w via w successive squarings: 1 for odd x, 0 for even x.
uint32_t parity_collapse(uint32_t x, Width w);

enum class Builtin {
  mul,             // x*y
  add2,            // x+y
  add3,            // x+y+z (addition with carry-in)
  div_classical,   // floor division, x/0 = 0
  safe_div,        // patched division
  parity_collapse, // x^(2^w), the oddness indicator
  identity,        // x
  projection,      // i-th argument of an a-tuple
};

int builtin_arity(Builtin kind);
std::string_view builtin_name(Builtin kind);

// An n-bit operator of arity 1..3: either a named builtin rule or a dense
// output table. Immutable after construction; cheap to copy around by value
// apart from the table payload.
class Operator {
 public:
  // Dense tables are row-major: index = x*2^(w*(arity-1)) + y*2^(w*(arity-2)) + ...
  // Permitted only when arity*bits <= 16 (at most 65536 entries).
  static Operator dense(std::string name, Width w, int arity, std::vector<uint32_t> table);

  // A builtin rule at the given width (projection excluded; see below).
  static Operator builtin(Builtin kind, Width w);

  // projection_<index>_of_<arity>: returns its index-th argument (1-based).
  static Operator projection(Width w, int arity, int index);

  // Resolve a builtin by name ("mul", "add2", "add3", "div_classical",
  // "safe_div", "parity_collapse", "identity", "projection_<i>_of_<a>").
  // Returns nullopt for unknown names.
  static std::optional<Operator> by_name(std::string_view name, Width w);
  static std::vector<std::string> builtin_names();

  const std::string& name() const { return name_; }
  Width width() const { return width_; }
  int arity() const { return arity_; }

  bool has_table() const { return !table_.empty(); }
  std::span<const uint32_t> table() const { return table_; }
  std::optional<Builtin> rule() const { return rule_; }

  // Evaluate at a concrete input tuple. Throws usage_error when the tuple
  // does not conform to this operator's arity or width.
  uint32_t eval(std::span<const uint32_t> args) const;
  uint32_t eval(std::initializer_list<uint32_t> args) const {
    return eval(std::span<const uint32_t>(args.begin(), args.size()));
  }

  // Unchecked evaluation for hot loops; args must already conform.
  uint32_t eval_unchecked(std::span<const uint32_t> args) const;

  // True when a dense table of this shape is permitted (arity*bits <= 16).
  static bool tabulatable(Width w, int arity);

  // Dense version of this operator (identity when already dense).
  // Throws usage_error when the shape exceeds the dense-table cutoff.
  Operator tabulated() const;

  // Pointwise equality; requires matching width and arity.
  bool same_function(const Operator& other) const;

  // Row-major index of an input tuple into the dense table.
  uint64_t table_index(std::span<const uint32_t> args) const;

 private:
  Operator(std::string name, Width w, int arity) : name_(std::move(name)), width_(w), arity_(arity) {}

  std::string name_;
  Width width_;
  int arity_;
  std::vector<uint32_t> table_;     // empty for rule-backed operators
  std::optional<Builtin> rule_;
  int projection_index_ = 0;        // 1-based, projection only
};

// Operator names share the variable grammar: [a-z][a-z0-9_]*.
bool valid_operator_name(std::string_view name);

// A named collection of operators sharing one width.
class OperatorSet {
 public:
  explicit OperatorSet(Width w) : width_(w) {}

  Width width() const { return width_; }
  // Throws usage_error on width mismatch or duplicate name.
  void add(Operator op);
  const Operator* find(std::string_view name) const;
  const Operator& at(std::string_view name) const;  // throws usage_error
  std::vector<std::string> names() const;           // sorted
  size_t size() const { return ops_.size(); }

 private:
  Width width_;
  std::vector<Operator> ops_;
};

}  // namespace alusafe
