#include "alusafe/safety.hpp"

#include <random>

namespace alusafe {

namespace {

// Walk all-odd tuples in lexicographic order; stop at the first violation.
// Returns true when a violation was found.
bool scan_odd_exhaustive(const Operator& op, ConditionOdd& out, uint64_t& checked) {
  Width w = op.width();
  int a = op.arity();
  uint64_t per_var = w.odd_count();
  uint32_t vals[3] = {1, 1, 1};
  uint64_t total = 1;
  for (int j = 0; j < a; ++j) total *= per_var;
  for (uint64_t i = 0; i < total; ++i) {
    uint64_t rest = i;
    for (int j = a - 1; j >= 0; --j) {
      vals[j] = static_cast<uint32_t>(2 * (rest % per_var) + 1);
      rest /= per_var;
    }
    ++checked;
    uint32_t v = op.eval_unchecked(std::span<const uint32_t>(vals, a));
    if (is_even(v)) {
      out.pass = false;
      out.violating_tuple.assign(vals, vals + a);
      out.output = v;
      return true;
    }
  }
  return false;
}

bool scan_odd_sampled(const Operator& op, const AnalyzeOptions& opt, ConditionOdd& out,
                      uint64_t& checked) {
  Width w = op.width();
  int a = op.arity();
  std::mt19937_64 rng(opt.seed);
  uint32_t vals[3];
  for (uint64_t i = 0; i < opt.sample_count; ++i) {
    for (int j = 0; j < a; ++j)
      vals[j] = (static_cast<uint32_t>(rng()) | 1u) & w.mask();
    ++checked;
    uint32_t v = op.eval_unchecked(std::span<const uint32_t>(vals, a));
    if (is_even(v)) {
      out.pass = false;
      out.violating_tuple.assign(vals, vals + a);
      out.output = v;
      return true;
    }
  }
  return false;
}

}  // namespace

SafetyReport analyze(const Operator& op, const AnalyzeOptions& options) {
  SafetyReport r;
  r.op_name = op.name();
  r.width_bits = op.width().bits();
  r.arity = op.arity();
  r.seed = options.seed;

  uint32_t zeros[3] = {0, 0, 0};
  uint32_t k0 = op.eval_unchecked(std::span<const uint32_t>(zeros, op.arity()));
  r.condition_zero.pass = (k0 == 0);
  r.condition_zero.value_at_zero = k0;

  uint64_t odd_tuples = 1;
  for (int j = 0; j < op.arity(); ++j) odd_tuples *= op.width().odd_count();
  r.condition_odd.pass = true;
  if (odd_tuples <= options.exhaustive_limit) {
    r.exhaustive = true;
    scan_odd_exhaustive(op, r.condition_odd, r.tuples_checked);
  } else {
    r.exhaustive = false;
    scan_odd_sampled(op, options, r.condition_odd, r.tuples_checked);
  }
  return r;
}

Operator patch(const Operator& op) {
  Operator dense = op.tabulated();
  Width w = dense.width();
  int a = dense.arity();
  std::vector<uint32_t> table(dense.table().begin(), dense.table().end());

  table[0] = 0;  // force the zero point

  // bump all-odd cells with even output by 1 mod 2^w
  uint64_t per_var = w.odd_count();
  uint64_t total = 1;
  for (int j = 0; j < a; ++j) total *= per_var;
  uint32_t vals[3];
  for (uint64_t i = 0; i < total; ++i) {
    uint64_t rest = i;
    for (int j = a - 1; j >= 0; --j) {
      vals[j] = static_cast<uint32_t>(2 * (rest % per_var) + 1);
      rest /= per_var;
    }
    uint64_t idx = dense.table_index(std::span<const uint32_t>(vals, a));
    if (is_even(table[idx])) table[idx] = (table[idx] + 1) & w.mask();
  }
  return Operator::dense(dense.name(), w, a, std::move(table));
}

Operator patchwork(const Operator& test, const Operator& g, const Operator& h) {
  if (test.width() != g.width() || g.width() != h.width())
    throw usage_error("patchwork operators must share a width");
  if (test.arity() != g.arity() || g.arity() != h.arity())
    throw usage_error("patchwork operators must share an arity");
  Operator gt = g.tabulated();
  Operator ht = h.tabulated();
  Width w = gt.width();
  int a = gt.arity();
  size_t n = gt.table().size();
  std::vector<uint32_t> table(n);
  uint32_t vals[3];
  for (size_t i = 0; i < n; ++i) {
    size_t rest = i;
    for (int j = a - 1; j >= 0; --j) {
      vals[j] = static_cast<uint32_t>(rest) & w.mask();
      rest >>= w.bits();
    }
    uint32_t t = test.eval_unchecked(std::span<const uint32_t>(vals, a));
    table[i] = t != 0 ? gt.table()[i] : ht.table()[i];
  }
  return Operator::dense("patchwork", w, a, std::move(table));
}

}  // namespace alusafe
