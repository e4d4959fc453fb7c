#pragma once

#include <cstdint>
#include <optional>

#include "alusafe/width.hpp"

namespace alusafe {

// Number of worker threads: ALUSAFE_THREADS when set (>= 1), else the
// hardware concurrency, else 1.
int default_thread_count();

struct CountConditions {
  bool i = false;    // f(0,...,0) = 0
  bool ii = false;   // all-odd tuple -> odd output
  bool iii = false;  // all-even tuple -> even output
};

// Counting n-bit operator tables that satisfy a subset of the conditions.
// The analytic count is a per-cell product (each input tuple is classified as
// the zero point / all-odd / all-even / mixed) and is always a power of two.
struct CountResult {
  int width_bits = 0;
  int arity = 0;
  CountConditions conditions;
  int analytic_log2 = 0;             // count = 2^analytic_log2
  std::optional<uint64_t> analytic;  // present when it fits in 64 bits
  std::optional<uint64_t> brute;     // present when brute enumeration ran
};

// brute: stream every table (only permitted when the table space is at most
// 2^32, i.e. w * 2^(w*arity) <= 32); threads <= 0 means default_thread_count.
CountResult count_tables(Width w, int arity, CountConditions conditions, bool brute,
                         int threads = 0);

// Full enumeration of all 2^32 two-bit binary tables, counting those that
// satisfy footnote conditions (i)-(v). Streaming, no materialization.
uint64_t count_footnote_tables(int threads = 0);

}  // namespace alusafe
