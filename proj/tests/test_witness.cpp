#include <doctest.h>

#include <random>

#include "alusafe/witness.hpp"
#include "support/random_ops.hpp"

using namespace alusafe;

namespace {

// dense arity-2 table with chosen values at (0,0) and (1,1), rest from mul
Operator with_corners(Width w, uint32_t at_zero, uint32_t at_ones) {
  uint32_t n = w.mask() + 1;
  std::vector<uint32_t> table(size_t{n} * n);
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) table[x * n + y] = (x * y) & w.mask();
  table[0] = at_zero;
  table[1 * n + 1] = at_ones;
  return Operator::dense("corners", w, 2, std::move(table));
}

}  // namespace

TEST_CASE("zero-point witness case split") {
  Width w(2);

  SUBCASE("f(0,0) = f(1,1): h itself is constant") {
    Witness wit = witness_zero_violation(with_corners(w, 1, 1));
    CHECK(wit.case_name == "zero_point_a");
    CHECK(wit.kind == WitnessKind::constant_formula);
    CHECK(wit.claimed_constant == 1);
    CHECK(wit.verification.verified);
    CHECK(wit.verification.exhaustive);
  }

  SUBCASE("both odd: collapse gives 1") {
    Witness wit = witness_zero_violation(with_corners(w, 3, 1));
    CHECK(wit.case_name == "zero_point_b");
    CHECK(wit.claimed_constant == 1);
    CHECK(wit.verification.verified);
  }

  SUBCASE("both even: collapse gives 0") {
    Witness wit = witness_zero_violation(with_corners(w, 2, 0));
    CHECK(wit.case_name == "zero_point_c");
    CHECK(wit.claimed_constant == 0);
    CHECK(wit.verification.verified);
  }

  SUBCASE("mixed parity: parity-coverage product") {
    Witness wit = witness_zero_violation(with_corners(w, 2, 1));
    CHECK(wit.case_name == "zero_point_d");
    CHECK(wit.kind == WitnessKind::parity_coverage_computation);
    CHECK(wit.claimed_constant == 0);
    CHECK(wit.verification.verified);
    CHECK(wit.formula->variables().size() == 2);
  }

  SUBCASE("safe zero point is rejected") {
    CHECK_THROWS_AS((void)witness_zero_violation(with_corners(w, 0, 1)), domain_error);
  }
}

TEST_CASE("odd-violation witness for division") {
  Width w(4);
  Operator div = Operator::builtin(Builtin::div_classical, w);
  Witness wit = witness_odd_violation(div);
  CHECK(wit.case_name == "odd_violation");
  CHECK(wit.claimed_constant == 0);
  CHECK(wit.violating_tuple == std::vector<uint32_t>{1, 3});
  // n with 3 = n * 1 mod 16
  CHECK(wit.odd_scalar == 3);
  CHECK(wit.verification.verified);
  CHECK(wit.verification.exhaustive);
  CHECK(wit.verification.inputs_checked == 16);

  // re-verification from scratch agrees
  WitnessVerification again = verify_witness(wit, div);
  CHECK(again.verified);
  CHECK(again.inputs_checked == 16);
}

TEST_CASE("odd-violation witness for two-input addition") {
  Witness wit = witness_odd_violation(Operator::builtin(Builtin::add2, Width(2)));
  CHECK(wit.claimed_constant == 0);
  CHECK(wit.verification.verified);
  CHECK(print_formula(wit.formula) ==
        "(parity_collapse (add2 (parity_collapse x) (parity_collapse x)))");
}

TEST_CASE("witnesses refuse safe operators") {
  CHECK_THROWS_AS((void)make_witness(Operator::builtin(Builtin::mul, Width(4))), domain_error);
  CHECK_THROWS_AS((void)make_witness(Operator::builtin(Builtin::add3, Width(2))), domain_error);
  CHECK_THROWS_AS((void)witness_odd_violation(Operator::builtin(Builtin::mul, Width(4))),
                  domain_error);
}

TEST_CASE("witness scalar construction uses the violating tuple") {
  // a table violating (ii) at a deep tuple exercises scalar_mul chains
  Width w(3);
  uint32_t n = 8;
  std::vector<uint32_t> table(64);
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) table[x * n + y] = (x * y) & 7;
  table[5 * n + 7] = 4;  // f(5,7) even, f odd-preserving elsewhere
  Operator op = Operator::dense("deep", w, 2, std::move(table));
  Witness wit = make_witness(op);
  CHECK(wit.case_name == "odd_violation");
  CHECK(wit.violating_tuple == std::vector<uint32_t>{5, 7});
  // 7 = n*5 mod 8 -> n = 7 * 5^{-1} = 7*5 = 35 = 3 mod 8
  CHECK(wit.odd_scalar == 3);
  CHECK(wit.verification.verified);
}

TEST_CASE("witness totality on random unsafe tables") {
  std::mt19937_64 rng(2024);
  for (int wb : {2, 3}) {
    Width w(wb);
    for (int trial = 0; trial < 60; ++trial) {
      int arity = 1 + static_cast<int>(rng() % 3);
      Operator op = testsupport::random_unsafe_op(rng, w, arity, "u");
      Witness wit = make_witness(op);
      CHECK(wit.verification.verified);
      CHECK(wit.verification.exhaustive);
    }
  }
}

TEST_CASE("witness formulas stay literal-free and parseable") {
  Witness wit = make_witness(Operator::builtin(Builtin::div_classical, Width(4)));
  std::string text = print_formula(wit.formula);
  Formula::Ptr back = parse_formula(text);
  CHECK(print_formula(back) == text);
}
