#include "alusafe/counting.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

#include "alusafe/errors.hpp"

namespace alusafe {

int default_thread_count() {
  if (const char* env = std::getenv("ALUSAFE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

struct CellClasses {
  uint64_t zero_mask = 0;   // all bits of the zero-point entry
  uint64_t odd_mask = 0;    // low bit of every all-odd entry
  uint64_t even_mask = 0;   // low bit of every all-even entry (zero included)
  size_t n_odd = 0, n_even_nonzero = 0, n_mixed = 0, entries = 0;
};

CellClasses classify_cells(Width w, int arity) {
  if (arity < 1 || arity > 3) throw usage_error("arity must be 1, 2 or 3");
  if (w.bits() * arity > 30) throw usage_error("table shape too large to classify");
  CellClasses c;
  c.entries = size_t{1} << (w.bits() * arity);
  for (size_t e = 0; e < c.entries; ++e) {
    bool all_odd = true, all_even = true;
    size_t rest = e;
    for (int j = 0; j < arity; ++j) {
      uint32_t v = static_cast<uint32_t>(rest) & w.mask();
      rest >>= w.bits();
      (is_odd(v) ? all_even : all_odd) = false;
    }
    if (e == 0) {
      c.zero_mask = uint64_t{w.mask()} << 0;  // entry 0 sits in the low bits
      c.even_mask |= uint64_t{1} << 0;
    } else if (all_odd) {
      ++c.n_odd;
      if (c.entries * w.bits() <= 64) c.odd_mask |= uint64_t{1} << (e * w.bits());
    } else if (all_even) {
      ++c.n_even_nonzero;
      if (c.entries * w.bits() <= 64) c.even_mask |= uint64_t{1} << (e * w.bits());
    } else {
      ++c.n_mixed;
    }
  }
  return c;
}

}  // namespace

CountResult count_tables(Width w, int arity, CountConditions conds, bool brute, int threads) {
  CellClasses cells = classify_cells(w, arity);
  CountResult r;
  r.width_bits = w.bits();
  r.arity = arity;
  r.conditions = conds;

  uint64_t log2 = 0;
  if (conds.i)
    log2 += 0;  // zero point forced to 0
  else if (conds.iii)
    log2 += w.bits() - 1;  // zero point is an all-even cell, parity-bound
  else
    log2 += w.bits();
  log2 += cells.n_odd * (conds.ii ? w.bits() - 1 : w.bits());
  log2 += cells.n_even_nonzero * (conds.iii ? w.bits() - 1 : w.bits());
  log2 += cells.n_mixed * w.bits();
  r.analytic_log2 = static_cast<int>(log2);
  if (log2 <= 63) r.analytic = uint64_t{1} << log2;

  if (!brute) return r;

  int table_bits = static_cast<int>(cells.entries) * w.bits();
  if (table_bits > 32)
    throw usage_error("brute enumeration needs a table space of at most 2^32 (got 2^" +
                      std::to_string(table_bits) + ")");
  uint64_t total = uint64_t{1} << table_bits;
  uint64_t zero_mask = cells.zero_mask, odd_mask = cells.odd_mask, even_mask = cells.even_mask;
  bool ci = conds.i, cii = conds.ii, ciii = conds.iii;

  if (threads <= 0) threads = default_thread_count();
  if (static_cast<uint64_t>(threads) > total) threads = 1;
  std::vector<uint64_t> partial(threads, 0);
  std::vector<std::thread> workers;
  uint64_t chunk = total / threads;
  for (int t = 0; t < threads; ++t) {
    uint64_t begin = chunk * t;
    uint64_t end = (t == threads - 1) ? total : begin + chunk;
    workers.emplace_back([&, t, begin, end]() {
      uint64_t count = 0;
      for (uint64_t tab = begin; tab < end; ++tab) {
        if (ci && (tab & zero_mask) != 0) continue;
        if (cii && (tab & odd_mask) != odd_mask) continue;
        if (ciii && (tab & even_mask) != 0) continue;
        ++count;
      }
      partial[t] = count;
    });
  }
  for (auto& th : workers) th.join();
  uint64_t sum = 0;
  for (uint64_t p : partial) sum += p;
  r.brute = sum;
  return r;
}

uint64_t count_footnote_tables(int threads) {
  // Tables as w=2, k=2 function vectors: entry (x + 4y) at bits [2(x+4y), ..).
  // Masks for the cheap screens (i)-(iii), then the quad checks for (iv)/(v).
  uint64_t odd_mask = 0, even_mask = 0;
  for (int x : {1, 3})
    for (int y : {1, 3}) odd_mask |= uint64_t{1} << (2 * (x + 4 * y));
  for (int x : {0, 2})
    for (int y : {0, 2}) even_mask |= uint64_t{1} << (2 * (x + 4 * y));

  if (threads <= 0) threads = default_thread_count();
  uint64_t total = uint64_t{1} << 32;
  std::vector<uint64_t> partial(threads, 0);
  std::vector<std::thread> workers;
  uint64_t chunk = total / threads;
  for (int t = 0; t < threads; ++t) {
    uint64_t begin = chunk * t;
    uint64_t end = (t == threads - 1) ? total : begin + chunk;
    workers.emplace_back([&, t, begin, end]() {
      uint64_t count = 0;
      for (uint64_t tab = begin; tab < end; ++tab) {
        if ((tab & 3u) != 0) continue;                    // (i)
        if ((tab & odd_mask) != odd_mask) continue;       // (ii), odd outputs
        if ((tab & even_mask) != 0) continue;             // (iii)
        auto at = [&](int x, int y) {
          return static_cast<uint32_t>(tab >> (2 * ((x & 3) + 4 * (y & 3)))) & 3u;
        };
        bool ok = true;
        for (int x = 0; x < 2 && ok; ++x)
          for (int y = 0; y < 2 && ok; ++y) {
            uint32_t a = at(x, y), b = at(x + 2, y), c = at(x, y + 2), d = at(x + 2, y + 2);
            if (((a ^ b) | (a ^ c) | (a ^ d)) & 1u) ok = false;                      // (iv)
            else if (((c - a) & 3u) != ((d - b) & 3u) || ((b - a) & 3u) != ((d - c) & 3u))
              ok = false;                                                            // (v)
          }
        if (ok) ++count;
      }
      partial[t] = count;
    });
  }
  for (auto& th : workers) th.join();
  uint64_t sum = 0;
  for (uint64_t p : partial) sum += p;
  return sum;
}

}  // namespace alusafe
