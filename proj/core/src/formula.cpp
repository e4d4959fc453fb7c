#include "alusafe/formula.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace alusafe {

Formula::Ptr Formula::var(std::string name) {
  if (!valid_operator_name(name))
    throw usage_error("invalid variable name '" + name + "' (want [a-z][a-z0-9_]*)");
  return Ptr(new Formula(std::move(name), {}));
}

Formula::Ptr Formula::apply(std::string op_name, std::vector<Ptr> args) {
  if (!valid_operator_name(op_name))
    throw usage_error("invalid operator name '" + op_name + "'");
  if (args.empty() || args.size() > 3)
    throw usage_error("operator application needs 1..3 arguments");
  for (const Ptr& a : args)
    if (!a) throw usage_error("null formula argument");
  return Ptr(new Formula(std::move(op_name), std::move(args)));
}

std::vector<std::string> Formula::variables() const {
  std::set<std::string> names;
  std::vector<const Formula*> stack{this};
  std::set<const Formula*> seen;
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (f->is_var()) {
      names.insert(f->symbol_);
      continue;
    }
    for (const Ptr& a : f->args_)
      if (seen.insert(a.get()).second) stack.push_back(a.get());
  }
  return {names.begin(), names.end()};
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) { throw parse_error(what, pos); }

  std::string name() {
    size_t start = pos;
    if (pos >= text.size()) fail("expected a name");
    char c = text[pos];
    if (c >= '0' && c <= '9') fail("numeric literals are not allowed in formulas");
    if (c < 'a' || c > 'z') fail(std::string("unexpected character '") + c + "'");
    while (pos < text.size()) {
      c = text[pos];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')
        ++pos;
      else
        break;
    }
    return std::string(text.substr(start, pos - start));
  }

  Formula::Ptr expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      size_t open = pos;
      ++pos;
      skip_ws();
      std::string op = name();
      std::vector<Formula::Ptr> args;
      while (true) {
        skip_ws();
        if (pos >= text.size()) {
          pos = open;
          fail("unclosed '('");
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(expr());
      }
      if (args.empty()) fail("operator '" + op + "' applied to no arguments");
      if (args.size() > 3) fail("operator '" + op + "' applied to more than 3 arguments");
      return Formula::apply(std::move(op), std::move(args));
    }
    return Formula::var(name());
  }
};

}  // namespace

Formula::Ptr parse_formula(std::string_view text) {
  Parser p{text};
  Formula::Ptr f = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after formula");
  return f;
}

std::string print_formula(const Formula::Ptr& f) {
  if (!f) throw usage_error("null formula");
  if (f->is_var()) return f->symbol();
  std::string out = "(" + f->symbol();
  for (const Formula::Ptr& a : f->args()) {
    out += ' ';
    out += print_formula(a);
  }
  out += ')';
  return out;
}

CompiledFormula::CompiledFormula(Formula::Ptr f, const OperatorSet& ops)
    : source_(std::move(f)), width_(ops.width()) {
  if (!source_) throw usage_error("null formula");
  vars_ = source_->variables();
  std::unordered_map<std::string, int> var_slot;
  for (size_t i = 0; i < vars_.size(); ++i) var_slot[vars_[i]] = static_cast<int>(i);

  // Postorder over the DAG; shared nodes compile to one step.
  std::unordered_map<const Formula*, int> slot_of;
  struct Frame { const Formula* node; size_t next_child; };
  std::vector<Frame> stack{{source_.get(), 0}};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (slot_of.count(fr.node)) {
      stack.pop_back();
      continue;
    }
    if (fr.node->is_var()) {
      Step s;
      s.op = nullptr;
      s.var_index = var_slot.at(fr.node->symbol());
      slot_of[fr.node] = static_cast<int>(steps_.size());
      steps_.push_back(std::move(s));
      stack.pop_back();
      continue;
    }
    if (fr.next_child < fr.node->args().size()) {
      const Formula* child = fr.node->args()[fr.next_child++].get();
      if (!slot_of.count(child)) stack.push_back({child, 0});
      continue;
    }
    const Operator& op = ops.at(fr.node->symbol());
    if (op.arity() != static_cast<int>(fr.node->args().size()))
      throw usage_error("operator '" + op.name() + "' has arity " + std::to_string(op.arity()) +
                        ", applied to " + std::to_string(fr.node->args().size()) + " arguments");
    Step s;
    s.op = &op;
    s.var_index = -1;
    for (const Formula::Ptr& a : fr.node->args()) s.args.push_back(slot_of.at(a.get()));
    slot_of[fr.node] = static_cast<int>(steps_.size());
    steps_.push_back(std::move(s));
    stack.pop_back();
  }
}

uint32_t CompiledFormula::eval(std::span<const uint32_t> var_values,
                               std::vector<uint32_t>& scratch) const {
  if (var_values.size() != vars_.size())
    throw usage_error("expected " + std::to_string(vars_.size()) + " variable values, got " +
                      std::to_string(var_values.size()));
  for (uint32_t v : var_values)
    if (!width_.contains(v)) throw usage_error("variable value out of range");
  scratch.resize(steps_.size());
  uint32_t argbuf[3];
  for (size_t i = 0; i < steps_.size(); ++i) {
    const Step& s = steps_[i];
    if (!s.op) {
      scratch[i] = var_values[s.var_index];
      continue;
    }
    for (size_t a = 0; a < s.args.size(); ++a) argbuf[a] = scratch[s.args[a]];
    scratch[i] = s.op->eval_unchecked(std::span<const uint32_t>(argbuf, s.args.size()));
  }
  return steps_.empty() ? 0 : scratch.back();
}

uint32_t CompiledFormula::eval(std::span<const uint32_t> var_values) const {
  std::vector<uint32_t> scratch;
  return eval(var_values, scratch);
}

uint32_t eval_formula(const Formula::Ptr& f, const OperatorSet& ops,
                      const std::map<std::string, uint32_t>& assignment) {
  CompiledFormula cf(f, ops);
  std::vector<uint32_t> vals;
  vals.reserve(cf.variables().size());
  for (const std::string& v : cf.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw usage_error("unbound variable '" + v + "'");
    vals.push_back(it->second);
  }
  return cf.eval(vals);
}

std::vector<std::string> canonical_var_names(int k) {
  if (k < 1) throw usage_error("need at least one variable");
  std::vector<std::string> names;
  if (k <= 3) {
    const char* base[3] = {"x", "y", "z"};
    for (int i = 0; i < k; ++i) names.emplace_back(base[i]);
    return names;
  }
  int digits = k > 9 ? 2 : 1;
  for (int i = 1; i <= k; ++i) {
    std::string n = std::to_string(i);
    while (static_cast<int>(n.size()) < digits) n.insert(n.begin(), '0');
    names.push_back("x" + n);
  }
  return names;
}

Formula::Ptr scalar_mul_formula(uint32_t n_odd, const Formula::Ptr& operand) {
  if (!is_odd(n_odd)) throw domain_error("scalar multiple must be odd, got " + std::to_string(n_odd));
  if (!operand) throw usage_error("null formula");
  Formula::Ptr acc = operand;
  for (uint32_t built = 1; built < n_odd; built += 2)
    acc = Formula::apply("add3", {acc, operand, operand});
  return acc;
}

}  // namespace alusafe
