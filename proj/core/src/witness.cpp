#include "alusafe/witness.hpp"

#include <random>

namespace alusafe {

namespace {

constexpr uint64_t kExhaustiveVerifyLimit = uint64_t{1} << 20;
constexpr uint64_t kSampledVerifyCount = 1'000'000;

// h(x) = f(g(x), ..., g(x)) with g the parity collapse; the g subterm is
// shared, not copied.
Formula::Ptr collapse_compose(const Operator& op, const Formula::Ptr& var) {
  Formula::Ptr g = Formula::apply("parity_collapse", {var});
  std::vector<Formula::Ptr> args(op.arity(), g);
  return Formula::apply(op.name(), std::move(args));
}

uint32_t eval_at_all(const Operator& op, uint32_t v) {
  uint32_t args[3] = {v, v, v};
  return op.eval_unchecked(std::span<const uint32_t>(args, op.arity()));
}

WitnessVerification verify_constant_formula(const CompiledFormula& cf, uint32_t constant,
                                            Width w) {
  WitnessVerification out;
  size_t k = cf.variables().size();
  uint64_t total = uint64_t{1} << (w.bits() * k);
  std::vector<uint32_t> vals(k);
  std::vector<uint32_t> scratch;
  if (static_cast<uint64_t>(w.bits()) * k <= 20) {
    out.exhaustive = true;
    for (uint64_t i = 0; i < total; ++i) {
      uint64_t rest = i;
      for (size_t j = 0; j < k; ++j) {
        vals[j] = static_cast<uint32_t>(rest) & w.mask();
        rest >>= w.bits();
      }
      ++out.inputs_checked;
      if (cf.eval(vals, scratch) != constant) return out;
    }
  } else {
    out.exhaustive = false;
    std::mt19937_64 rng(1);
    for (uint64_t i = 0; i < kSampledVerifyCount; ++i) {
      for (size_t j = 0; j < k; ++j) vals[j] = static_cast<uint32_t>(rng()) & w.mask();
      ++out.inputs_checked;
      if (cf.eval(vals, scratch) != constant) return out;
    }
  }
  out.verified = true;
  return out;
}

// For parity-coverage witnesses: constant over every assignment whose two
// values have opposite parities.
WitnessVerification verify_parity_coverage(const CompiledFormula& cf, uint32_t constant,
                                           Width w) {
  WitnessVerification out;
  if (cf.variables().size() != 2) return out;
  std::vector<uint32_t> vals(2);
  std::vector<uint32_t> scratch;
  uint64_t half = w.odd_count();
  if (static_cast<uint64_t>(w.bits()) * 2 <= 20) {
    out.exhaustive = true;
    for (uint64_t a = 0; a < half; ++a)
      for (uint64_t b = 0; b < half; ++b)
        for (int order = 0; order < 2; ++order) {
          uint32_t odd = static_cast<uint32_t>(2 * a + 1);
          uint32_t even = static_cast<uint32_t>(2 * b);
          vals[0] = order ? even : odd;
          vals[1] = order ? odd : even;
          ++out.inputs_checked;
          if (cf.eval(vals, scratch) != constant) return out;
        }
  } else {
    out.exhaustive = false;
    std::mt19937_64 rng(1);
    for (uint64_t i = 0; i < kSampledVerifyCount; ++i) {
      uint32_t odd = (static_cast<uint32_t>(rng()) | 1u) & w.mask();
      uint32_t even = (static_cast<uint32_t>(rng()) & ~1u) & w.mask();
      bool flip = rng() & 1;
      vals[0] = flip ? even : odd;
      vals[1] = flip ? odd : even;
      ++out.inputs_checked;
      if (cf.eval(vals, scratch) != constant) return out;
    }
  }
  out.verified = true;
  return out;
}

}  // namespace

OperatorSet witness_operator_set(const Operator& op) {
  Width w = op.width();
  for (Builtin b : {Builtin::mul, Builtin::add3, Builtin::parity_collapse}) {
    if (op.name() != builtin_name(b)) continue;
    Operator helper = Operator::builtin(b, w);
    bool same = op.arity() == helper.arity() && Operator::tabulatable(w, op.arity()) &&
                op.same_function(helper);
    if (!same)
      throw usage_error("operator name '" + op.name() +
                        "' collides with a witness helper of different semantics");
  }
  OperatorSet ops(w);
  ops.add(op);
  for (Builtin b : {Builtin::mul, Builtin::add3, Builtin::parity_collapse})
    if (op.name() != builtin_name(b)) ops.add(Operator::builtin(b, w));
  return ops;
}

WitnessVerification verify_witness(const Witness& w, const Operator& op) {
  OperatorSet ops = witness_operator_set(op);
  CompiledFormula cf(w.formula, ops);
  Width width(w.width_bits);
  if (w.kind == WitnessKind::constant_formula)
    return verify_constant_formula(cf, w.claimed_constant, width);
  return verify_parity_coverage(cf, w.claimed_constant, width);
}

Witness witness_zero_violation(const Operator& op) {
  Width w = op.width();
  uint32_t k0 = eval_at_all(op, 0);
  if (k0 == 0) throw domain_error("operator takes zero to zero; no zero-point witness exists");
  uint32_t k1 = eval_at_all(op, 1);

  Witness out;
  out.op_name = op.name();
  out.width_bits = w.bits();
  out.k0 = k0;
  out.k1 = k1;

  Formula::Ptr x = Formula::var("x");
  Formula::Ptr h = collapse_compose(op, x);  // k0 on evens, k1 on odds

  if (k1 == k0) {
    out.case_name = "zero_point_a";
    out.kind = WitnessKind::constant_formula;
    out.formula = h;
    out.claimed_constant = k0;
  } else if (is_odd(k0) && is_odd(k1)) {
    out.case_name = "zero_point_b";
    out.kind = WitnessKind::constant_formula;
    out.formula = Formula::apply("parity_collapse", {h});
    out.claimed_constant = 1;
  } else if (is_even(k0) && is_even(k1)) {
    out.case_name = "zero_point_c";
    out.kind = WitnessKind::constant_formula;
    out.formula = Formula::apply("parity_collapse", {h});
    out.claimed_constant = 0;
  } else {
    // exactly one of k0, k1 is even: multiply h over a parity-covering
    // multiset so the even one is always a factor, then collapse
    out.case_name = "zero_point_d";
    out.kind = WitnessKind::parity_coverage_computation;
    Formula::Ptr hy = collapse_compose(op, Formula::var("y"));
    out.formula =
        Formula::apply("parity_collapse", {Formula::apply("mul", {h, hy})});
    out.claimed_constant = 0;
  }
  out.verification = verify_witness(out, op);
  return out;
}

Witness witness_odd_violation(const Operator& op) {
  Width w = op.width();
  if (eval_at_all(op, 0) != 0)
    throw domain_error("operator violates the zero condition; use the zero-point witness");
  SafetyReport report = analyze(op);
  if (report.condition_odd.pass)
    throw domain_error("operator preserves odd inputs; no odd-violation witness exists");

  const std::vector<uint32_t>& tuple = report.condition_odd.violating_tuple;

  Witness out;
  out.op_name = op.name();
  out.width_bits = w.bits();
  out.kind = WitnessKind::constant_formula;
  out.case_name = "odd_violation";
  out.k0 = 0;
  out.k1 = eval_at_all(op, 1);
  out.violating_tuple = tuple;
  if (op.arity() == 2) out.odd_scalar = (uint64_t{tuple[1]} * odd_inverse(tuple[0], w)) & w.mask();

  // G(x) = g( f( t1*g(x), t2*g(x), ... ) ): odd x makes g(x)=1 and feeds the
  // violating tuple (even output), even x feeds the zero tuple; both collapse
  // to 0.
  Formula::Ptr x = Formula::var("x");
  Formula::Ptr g = Formula::apply("parity_collapse", {x});
  std::vector<Formula::Ptr> args;
  args.reserve(tuple.size());
  for (uint32_t t : tuple) args.push_back(scalar_mul_formula(t, g));
  out.formula = Formula::apply("parity_collapse", {Formula::apply(op.name(), std::move(args))});
  out.claimed_constant = 0;

  out.verification = verify_witness(out, op);
  return out;
}

Witness make_witness(const Operator& op) {
  SafetyReport report = analyze(op);
  if (report.safe()) throw domain_error("operator '" + op.name() + "' is safe; no witness exists");
  if (!report.condition_zero.pass) return witness_zero_violation(op);
  return witness_odd_violation(op);
}

}  // namespace alusafe
