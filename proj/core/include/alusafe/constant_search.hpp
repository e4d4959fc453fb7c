#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alusafe/formula.hpp"
#include "alusafe/function_vector.hpp"

namespace alusafe {

// A formula together with the constant it evaluates to and the coverage of
// the claim.
struct ConstantFinding {
  Formula::Ptr formula;
  std::string formula_text;
  uint32_t constant = 0;
  bool exhaustive = true;
  uint64_t assignments_checked = 0;
  uint64_t seed = 0;  // meaningful when sampled
};

struct IsConstantOptions {
  // Exhaustive while width * #vars <= 20; sampled beyond that.
  int exhaustive_bits = 20;
  uint64_t sample_count = 1'000'000;
  uint64_t seed = 1;
};

// Decide whether a formula evaluates to one fixed value over every
// assignment of its variables.
std::optional<ConstantFinding> is_constant(const Formula::Ptr& f, const OperatorSet& ops,
                                           const IsConstantOptions& options = {});

struct SearchOptions {
  // Largest formula size (total tree nodes, variables included). 0 means run
  // until the reachable semantic classes stop growing (true closure).
  int max_nodes = 0;
  // Abort bound on distinct semantic classes.
  uint64_t max_classes = uint64_t{1} << 22;
  // Also return every reachable FunctionVector (for cross-checks).
  bool collect_classes = false;
};

struct SearchResult {
  std::vector<ConstantFinding> findings;
  bool complete = true;  // false when max_classes aborted the enumeration
  uint64_t semantic_classes = 0;
  int max_size_reached = 0;
  std::vector<FunctionVector> class_vectors;  // when collect_classes was set
};

// Enumerate formulas over the operator set and k canonical variables in
// size order with semantic deduplication (two formulas with the same
// FunctionVector are never both expanded), reporting every constant found.
// Complete up to semantic equivalence at the size bound.
SearchResult search_constants(const OperatorSet& ops, int num_vars,
                              const SearchOptions& options = {});

}  // namespace alusafe
