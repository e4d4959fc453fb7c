#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "alusafe/function_vector.hpp"
#include "alusafe/operator.hpp"

namespace alusafe {

enum class ClosureSeed {
  projections,                // the k projection functions, nothing else
  projections_and_constants,  // projections plus every constant function
};

std::string_view closure_seed_name(ClosureSeed seed);
ClosureSeed closure_seed_by_name(std::string_view name);  // usage_error on unknown

struct ClosureOptions {
  ClosureSeed seed = ClosureSeed::projections;
  // Abort bound on the member count; exceeded -> result flagged invalid.
  uint64_t max_members = uint64_t{1} << 22;
};

// Fixpoint of pointwise generator application over k-variable width-w
// functions. Members are packed codes when the shape fits in 64 bits,
// explicit output vectors otherwise.
struct ClosureResult {
  std::vector<std::string> generator_names;
  int width_bits = 0;
  int num_vars = 0;
  std::string seed_name;
  bool valid = true;  // false when the member bound aborted the run
  int iterations = 0;
  bool contains_constant = false;

  bool packed = false;
  std::vector<uint64_t> codes;                     // packed representation
  std::vector<std::vector<uint32_t>> big_members;  // otherwise

  size_t size() const { return packed ? codes.size() : big_members.size(); }
  FunctionVector member(size_t i) const;
};

ClosureResult close(const std::vector<Operator>& generators, Width w, int num_vars,
                    const ClosureOptions& options = {});

// Re-check the fixpoint property from scratch: every generator applied to
// every member tuple lands inside the member set.
bool verify_fixpoint(const ClosureResult& result, const std::vector<Operator>& generators);

// One decimal FunctionVector code per line, sorted ascending.
void dump_closure(const ClosureResult& result, const std::filesystem::path& path);
std::vector<FunctionVector> load_closure_dump(const std::filesystem::path& path, Width w,
                                              int num_vars);

// The five 2-bit table conditions, checkable on any w=2, k=2 function:
//   i:   f(0,0) = 0
//   ii:  odd,odd -> odd
//   iii: even,even -> even
//   iv:  the parities of f(x,y), f(x+2,y), f(x,y+2), f(x+2,y+2) agree
//   v:   differences along opposite edges of each 2x2-stepped square agree
//        (mod 4): f(x,y+2)-f(x,y) = f(x+2,y+2)-f(x+2,y) and
//                 f(x+2,y)-f(x,y) = f(x+2,y+2)-f(x,y+2)
struct FootnoteFlags {
  bool i = false, ii = false, iii = false, iv = false, v = false;
  bool all() const { return i && ii && iii && iv && v; }
};
FootnoteFlags footnote_conditions(const FunctionVector& fv);  // usage_error unless w=2,k=2

}  // namespace alusafe
