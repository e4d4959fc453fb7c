#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <random>

#include "alusafe/operator.hpp"
#include "alusafe/operator_io.hpp"

using namespace alusafe;

TEST_CASE("builtin evaluation basics") {
  CHECK(Operator::builtin(Builtin::mul, Width(8)).eval({2, 2}) == 4);
  CHECK(Operator::builtin(Builtin::add3, Width(8)).eval({1, 1, 1}) == 3);
  CHECK(Operator::builtin(Builtin::mul, Width(2)).eval({3, 3}) == 1);  // 9 mod 4
  CHECK(Operator::builtin(Builtin::add2, Width(8)).eval({1, 1}) == 2);
  CHECK(Operator::builtin(Builtin::identity, Width(5)).eval({17}) == 17);
  CHECK(Operator::projection(Width(4), 3, 2).eval({1, 2, 3}) == 2);
  CHECK(Operator::projection(Width(4), 3, 3).eval({1, 2, 3}) == 3);
}

TEST_CASE("eval rejects malformed tuples") {
  Operator mul = Operator::builtin(Builtin::mul, Width(4));
  CHECK_THROWS_AS((void)mul.eval({1}), usage_error);
  CHECK_THROWS_AS((void)mul.eval({1, 2, 3}), usage_error);
  CHECK_THROWS_AS((void)mul.eval({16, 1}), usage_error);
}

TEST_CASE("classical division") {
  CHECK(div_classical(1, 3) == 0);
  CHECK(div_classical(0, 0) == 0);
  CHECK(div_classical(7, 2) == 3);
  CHECK(div_classical(9, 0) == 0);  // x/0 = 0 for every x
  CHECK(div_classical(255, 1) == 255);
}

TEST_CASE("safe division") {
  Width w4(4);
  CHECK(safe_div(1, 3, w4) == 1);  // 1/3 = 0 is even, both odd -> +1
  CHECK(safe_div(0, 0, w4) == 0);
  CHECK(safe_div(6, 3, w4) == 2);  // x even -> classical
  CHECK(safe_div(9, 3, w4) == 3);  // odd quotient already
  // x = y = 2^w-1: quotient 1 is odd, no correction, no wraparound question
  CHECK(safe_div(15, 15, w4) == 1);
  CHECK(safe_div(0xFFFFFFFFu, 0xFFFFFFFFu, Width(32)) == 1);
}

TEST_CASE("safe_div keeps odd/odd odd and fixes the division attack") {
  for (int wb = 1; wb <= 8; ++wb) {
    Width w(wb);
    for (uint32_t x = 1; x <= w.mask(); x += 2)
      for (uint32_t y = 1; y <= w.mask(); y += 2) CHECK(is_odd(safe_div(x, y, w)));
  }
}

TEST_CASE("correction check examples") {
  CHECK(correction_check(1, 3, safe_div(1, 3, Width(4))) == true);
  CHECK(correction_check(7, 2, 3) == false);  // 3*2 = 6 in (5,7]
  CHECK(correction_check(9, 3, 3) == false);  // exact: 9 in (6,9]
  CHECK_THROWS_AS((void)correction_check(1, 0, 1), domain_error);
}

TEST_CASE("correction check identifies exactly the corrected quotients") {
  // independent predicate: correction applied iff x odd, y odd, floor even
  for (int wb = 1; wb <= 6; ++wb) {
    Width w(wb);
    for (uint32_t x = 0; x <= w.mask(); ++x)
      for (uint32_t y = 1; y <= w.mask(); ++y) {
        bool applied = correction_check(x, y, safe_div(x, y, w));
        bool expect = is_odd(x) && is_odd(y) && is_even(x / y);
        CHECK(applied == expect);
      }
  }
}

TEST_CASE("parity collapse is the oddness indicator") {
  CHECK(parity_collapse(3, Width(2)) == 1);  // 81 mod 4
  CHECK(parity_collapse(6, Width(8)) == 0);
  CHECK(parity_collapse(255, Width(8)) == 1);
  for (int wb = 1; wb <= 10; ++wb) {
    Width w(wb);
    for (uint32_t x = 0; x <= w.mask(); ++x) CHECK(parity_collapse(x, w) == (x & 1));
  }
  // spot-check large widths
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    uint32_t x = static_cast<uint32_t>(rng());
    CHECK(parity_collapse(x, Width(32)) == (x & 1));
  }
}

TEST_CASE("odd inverse") {
  for (int wb : {2, 3, 8, 16, 32}) {
    Width w(wb);
    for (uint32_t n = 1; n <= std::min<uint32_t>(w.mask(), 99); n += 2) {
      uint32_t inv = odd_inverse(n, w);
      CHECK(((uint64_t{n} * inv) & w.mask()) == 1);
    }
  }
  CHECK_THROWS_AS((void)odd_inverse(4, Width(8)), usage_error);
}

TEST_CASE("parity invariants of mul and add3") {
  // odd tuples map to odd, the zero tuple maps to zero
  for (int wb = 1; wb <= 8; ++wb) {
    Width w(wb);
    Operator mul = Operator::builtin(Builtin::mul, w);
    Operator add3 = Operator::builtin(Builtin::add3, w);
    CHECK(mul.eval({0, 0}) == 0);
    CHECK(add3.eval({0, 0, 0}) == 0);
    for (uint32_t x = 1; x <= w.mask(); x += 2)
      for (uint32_t y = 1; y <= w.mask(); y += 2) {
        CHECK(is_odd(mul.eval({x, y})));
        if (wb <= 5)
          for (uint32_t z = 1; z <= w.mask(); z += 2) CHECK(is_odd(add3.eval({x, y, z})));
      }
  }
  std::mt19937_64 rng(11);
  Width w32(32);
  Operator mul = Operator::builtin(Builtin::mul, w32);
  Operator add3 = Operator::builtin(Builtin::add3, w32);
  for (int i = 0; i < 1000000; ++i) {
    uint32_t x = static_cast<uint32_t>(rng()) | 1, y = static_cast<uint32_t>(rng()) | 1,
             z = static_cast<uint32_t>(rng()) | 1;
    CHECK(is_odd(mul.eval_unchecked(std::array<uint32_t, 2>{x, y})));
    CHECK(is_odd(add3.eval_unchecked(std::array<uint32_t, 3>{x, y, z})));
  }
}

TEST_CASE("tabulated builtins match their rules pointwise") {
  for (int wb = 1; wb <= 8; ++wb) {
    Width w(wb);
    for (Builtin b : {Builtin::mul, Builtin::add2, Builtin::div_classical, Builtin::safe_div}) {
      Operator rule = Operator::builtin(b, w);
      Operator dense = rule.tabulated();
      CHECK(dense.has_table());
      CHECK(rule.same_function(dense));
    }
  }
  for (int wb = 1; wb <= 5; ++wb) {
    Operator rule = Operator::builtin(Builtin::add3, Width(wb));
    CHECK(rule.same_function(rule.tabulated()));
  }
  for (int wb = 1; wb <= 16; ++wb) {
    Operator rule = Operator::builtin(Builtin::parity_collapse, Width(wb));
    CHECK(rule.same_function(rule.tabulated()));
  }
}

TEST_CASE("dense table validation") {
  CHECK_THROWS_AS(Operator::dense("t", Width(2), 2, std::vector<uint32_t>(15, 0)), usage_error);
  std::vector<uint32_t> bad(16, 0);
  bad[3] = 4;  // out of range at width 2
  CHECK_THROWS_AS(Operator::dense("t", Width(2), 2, std::move(bad)), usage_error);
  CHECK_THROWS_AS(Operator::dense("t", Width(9), 2, std::vector<uint32_t>()), usage_error);
  CHECK_THROWS_AS(Operator::dense("T", Width(1), 1, std::vector<uint32_t>(2, 0)), usage_error);
}

TEST_CASE("dense table indexing is row-major") {
  // f(x,y) = 4x + y at width 2 puts value x*4+y at index x*4+y
  std::vector<uint32_t> table(16);
  for (uint32_t i = 0; i < 16; ++i) table[i] = i & 3;
  Operator op = Operator::dense("rowmajor", Width(2), 2, std::move(table));
  CHECK(op.eval({1, 2}) == ((1 * 4 + 2) & 3));
  CHECK(op.eval({3, 0}) == ((3 * 4 + 0) & 3));
}

TEST_CASE("operator name lookup") {
  CHECK(Operator::by_name("mul", Width(8)).has_value());
  CHECK(Operator::by_name("projection_2_of_3", Width(4)).has_value());
  CHECK(!Operator::by_name("projection_3_of_2", Width(4)).has_value());
  CHECK(!Operator::by_name("nosuch", Width(4)).has_value());
  CHECK(Operator::by_name("projection_1_of_1", Width(4))->arity() == 1);
}

TEST_CASE("operator file round trip") {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "alusafe_mul2.json";
  Operator mul = Operator::builtin(Builtin::mul, Width(2)).tabulated();
  save_operator(mul, path);
  Operator back = load_operator(path);
  CHECK(back.name() == "mul");
  CHECK(back.width().bits() == 2);
  CHECK(back.same_function(mul));
  std::filesystem::remove(path);
}

TEST_CASE("operator file parse errors carry a location") {
  CHECK_THROWS_AS((void)parse_operator_json("{"), parse_error);
  CHECK_THROWS_AS((void)parse_operator_json(R"({"name":"t","width":2,"arity":2})"), parse_error);
  // wrong table length
  CHECK_THROWS_AS(
      (void)parse_operator_json(R"({"name":"t","width":2,"arity":2,"table":[0,1,2]})"),
      parse_error);
  // entry out of range
  std::string big = R"({"name":"t","width":2,"arity":1,"table":[0,1,2,4]})";
  CHECK_THROWS_AS((void)parse_operator_json(big), parse_error);
  try {
    (void)parse_operator_json(big);
  } catch (const parse_error& e) {
    CHECK(e.position == 3);  // index of the offending entry
  }
}

TEST_CASE("resolve_operator distinguishes builtins and files") {
  CHECK(resolve_operator("safe_div", Width(4)).rule() == Builtin::safe_div);
  CHECK_THROWS_AS((void)resolve_operator("nosuch", Width(4)), usage_error);
  CHECK_THROWS_AS((void)resolve_operator("mul", std::nullopt), usage_error);
}

TEST_CASE("operators are immutable and shareable") {
  Operator op = Operator::builtin(Builtin::safe_div, Width(6)).tabulated();
  std::span<const uint32_t> t1 = op.table();
  Operator copy = op;
  CHECK(std::equal(t1.begin(), t1.end(), copy.table().begin()));
}
