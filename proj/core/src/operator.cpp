#include "alusafe/operator.hpp"

#include <algorithm>
#include <charconv>

namespace alusafe {

uint32_t odd_inverse(uint32_t n, Width w) {
  if (!is_odd(n)) throw usage_error("odd_inverse: value is even");
  // Hensel lifting doubles the number of correct low bits per step.
  uint32_t inv = n;  // correct to 3 bits already for odd n? start at n: n*n = 1 mod 8
  for (int i = 0; i < 5; ++i) inv = inv * (2u - n * inv);
  return inv & w.mask();
}

uint32_t div_classical(uint32_t x, uint32_t y) { return y == 0 ? 0 : x / y; }

uint32_t safe_div(uint32_t x, uint32_t y, Width w) {
  uint32_t q = div_classical(x, y);
  if (is_odd(x) && is_odd(y) && is_even(q)) q = (q + 1) & w.mask();
  return q;
}

bool correction_check(uint32_t x, uint32_t y, uint32_t q) {
  if (y == 0) throw domain_error("correction_check: divisor is zero");
  // q*y in (x-y, x] <=> q*y <= x and q*y + y > x. Both sides fit in 64 bits.
  uint64_t qy = uint64_t{q} * y;
  bool uncorrected = qy <= x && qy + y > x;
  return !uncorrected;
}

uint32_t parity_collapse(uint32_t x, Width w) {
  uint32_t v = x & w.mask();
  for (int i = 0; i < w.bits(); ++i) v = (v * v) & w.mask();
  return v;
}

int builtin_arity(Builtin kind) {
  switch (kind) {
    case Builtin::mul:
    case Builtin::add2:
    case Builtin::div_classical:
    case Builtin::safe_div:
      return 2;
    case Builtin::add3:
      return 3;
    case Builtin::parity_collapse:
    case Builtin::identity:
      return 1;
    case Builtin::projection:
      return 0;  // shape comes from the operator, not the rule
  }
  return 0;
}

std::string_view builtin_name(Builtin kind) {
  switch (kind) {
    case Builtin::mul: return "mul";
    case Builtin::add2: return "add2";
    case Builtin::add3: return "add3";
    case Builtin::div_classical: return "div_classical";
    case Builtin::safe_div: return "safe_div";
    case Builtin::parity_collapse: return "parity_collapse";
    case Builtin::identity: return "identity";
    case Builtin::projection: return "projection";
  }
  return "";
}

bool valid_operator_name(std::string_view name) {
  if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool Operator::tabulatable(Width w, int arity) { return arity * w.bits() <= 16; }

Operator Operator::dense(std::string name, Width w, int arity, std::vector<uint32_t> table) {
  if (arity < 1 || arity > 3) throw usage_error("operator arity must be 1, 2 or 3");
  if (!valid_operator_name(name))
    throw usage_error("invalid operator name '" + name + "' (want [a-z][a-z0-9_]*)");
  if (!tabulatable(w, arity))
    throw usage_error("dense table of arity " + std::to_string(arity) + " at width " +
                      std::to_string(w.bits()) + " exceeds the 2^16-entry cutoff");
  uint64_t want = uint64_t{1} << (w.bits() * arity);
  if (table.size() != want)
    throw usage_error("dense table has " + std::to_string(table.size()) + " entries, expected " +
                      std::to_string(want));
  for (size_t i = 0; i < table.size(); ++i)
    if (!w.contains(table[i]))
      throw usage_error("table entry " + std::to_string(table[i]) + " at index " +
                        std::to_string(i) + " is out of range for width " +
                        std::to_string(w.bits()));
  Operator op(std::move(name), w, arity);
  op.table_ = std::move(table);
  return op;
}

Operator Operator::builtin(Builtin kind, Width w) {
  if (kind == Builtin::projection)
    throw usage_error("use Operator::projection for projections");
  Operator op(std::string(builtin_name(kind)), w, builtin_arity(kind));
  op.rule_ = kind;
  return op;
}

Operator Operator::projection(Width w, int arity, int index) {
  if (arity < 1 || arity > 3) throw usage_error("projection arity must be 1, 2 or 3");
  if (index < 1 || index > arity) throw usage_error("projection index out of range");
  Operator op("projection_" + std::to_string(index) + "_of_" + std::to_string(arity), w, arity);
  op.rule_ = Builtin::projection;
  op.projection_index_ = index;
  return op;
}

std::optional<Operator> Operator::by_name(std::string_view name, Width w) {
  for (Builtin kind : {Builtin::mul, Builtin::add2, Builtin::add3, Builtin::div_classical,
                       Builtin::safe_div, Builtin::parity_collapse, Builtin::identity}) {
    if (name == builtin_name(kind)) return builtin(kind, w);
  }
  // projection_<i>_of_<a>
  if (name.starts_with("projection_") && name.size() == 17 && name.substr(12, 4) == "_of_") {
    int i = name[11] - '0', a = name[16] - '0';
    if (i >= 1 && a <= 3 && i <= a) return projection(w, a, i);
  }
  return std::nullopt;
}

std::vector<std::string> Operator::builtin_names() {
  std::vector<std::string> names;
  for (Builtin kind : {Builtin::mul, Builtin::add2, Builtin::add3, Builtin::div_classical,
                       Builtin::safe_div, Builtin::parity_collapse, Builtin::identity})
    names.emplace_back(builtin_name(kind));
  for (int a = 1; a <= 3; ++a)
    for (int i = 1; i <= a; ++i)
      names.push_back("projection_" + std::to_string(i) + "_of_" + std::to_string(a));
  return names;
}

uint64_t Operator::table_index(std::span<const uint32_t> args) const {
  uint64_t idx = 0;
  for (uint32_t a : args) idx = (idx << width_.bits()) | a;
  return idx;
}

uint32_t Operator::eval_unchecked(std::span<const uint32_t> args) const {
  if (!table_.empty()) return table_[table_index(args)];
  uint32_t m = width_.mask();
  switch (*rule_) {
    case Builtin::mul: return (args[0] * args[1]) & m;
    case Builtin::add2: return (args[0] + args[1]) & m;
    case Builtin::add3: return (args[0] + args[1] + args[2]) & m;
    case Builtin::div_classical: return div_classical(args[0], args[1]);
    case Builtin::safe_div: return safe_div(args[0], args[1], width_);
    case Builtin::parity_collapse: return parity_collapse(args[0], width_);
    case Builtin::identity: return args[0];
    case Builtin::projection: return args[projection_index_ - 1];
  }
  return 0;
}

uint32_t Operator::eval(std::span<const uint32_t> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw usage_error("operator '" + name_ + "' expects " + std::to_string(arity_) +
                      " arguments, got " + std::to_string(args.size()));
  for (uint32_t a : args)
    if (!width_.contains(a))
      throw usage_error("argument " + std::to_string(a) + " is out of range for width " +
                        std::to_string(width_.bits()));
  return eval_unchecked(args);
}

Operator Operator::tabulated() const {
  if (has_table()) return *this;
  if (!tabulatable(width_, arity_))
    throw usage_error("operator '" + name_ + "' cannot be tabulated at width " +
                      std::to_string(width_.bits()));
  uint64_t n = uint64_t{1} << (width_.bits() * arity_);
  std::vector<uint32_t> table(n);
  uint32_t args[3] = {0, 0, 0};
  for (uint64_t idx = 0; idx < n; ++idx) {
    uint64_t rest = idx;
    for (int j = arity_ - 1; j >= 0; --j) {
      args[j] = static_cast<uint32_t>(rest & width_.mask());
      rest >>= width_.bits();
    }
    table[idx] = eval_unchecked(std::span<const uint32_t>(args, arity_));
  }
  Operator op(name_, width_, arity_);
  op.table_ = std::move(table);
  return op;
}

bool Operator::same_function(const Operator& other) const {
  if (width_ != other.width_ || arity_ != other.arity_) return false;
  return tabulated().table_ == other.tabulated().table_;
}

void OperatorSet::add(Operator op) {
  if (op.width() != width_)
    throw usage_error("operator '" + op.name() + "' has width " +
                      std::to_string(op.width().bits()) + ", set has width " +
                      std::to_string(width_.bits()));
  if (find(op.name()))
    throw usage_error("duplicate operator name '" + op.name() + "'");
  ops_.push_back(std::move(op));
}

const Operator* OperatorSet::find(std::string_view name) const {
  for (const Operator& op : ops_)
    if (op.name() == name) return &op;
  return nullptr;
}

const Operator& OperatorSet::at(std::string_view name) const {
  const Operator* op = find(name);
  if (!op) throw usage_error("unknown operator '" + std::string(name) + "'");
  return *op;
}

std::vector<std::string> OperatorSet::names() const {
  std::vector<std::string> out;
  out.reserve(ops_.size());
  for (const Operator& op : ops_) out.push_back(op.name());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace alusafe
