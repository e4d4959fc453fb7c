#include "alusafe/closure.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <thread>
#include <unordered_set>

#include "alusafe/counting.hpp"

namespace alusafe {

std::string_view closure_seed_name(ClosureSeed seed) {
  switch (seed) {
    case ClosureSeed::projections: return "projections";
    case ClosureSeed::projections_and_constants: return "projections+constants";
  }
  return "";
}

ClosureSeed closure_seed_by_name(std::string_view name) {
  if (name == "projections") return ClosureSeed::projections;
  if (name == "projections+constants") return ClosureSeed::projections_and_constants;
  throw usage_error("unknown closure seed '" + std::string(name) +
                    "' (want projections or projections+constants)");
}

FunctionVector ClosureResult::member(size_t i) const {
  Width w(width_bits);
  if (packed) return FunctionVector::from_code(codes.at(i), w, num_vars);
  return FunctionVector(w, num_vars, big_members.at(i));
}

namespace {

struct GenTable {
  std::string name;
  int arity;
  std::vector<uint32_t> table;  // row-major, index = (..(x<<w)|y..)<<w|z
  bool symmetric;
  bool is_add3;  // decomposes as add2(add2(a,b),c) entrywise
};

GenTable prepare_generator(const Operator& op, Width w) {
  if (op.width() != w) throw usage_error("generator '" + op.name() + "' has the wrong width");
  if (!Operator::tabulatable(w, op.arity()))
    throw usage_error("generator '" + op.name() + "' too wide to tabulate for closure");
  Operator dense = op.tabulated();
  GenTable g;
  g.name = op.name();
  g.arity = op.arity();
  g.table.assign(dense.table().begin(), dense.table().end());
  g.symmetric = true;
  uint32_t n = w.mask() + 1;
  if (g.arity == 2) {
    for (uint32_t x = 0; x < n && g.symmetric; ++x)
      for (uint32_t y = 0; y < x; ++y)
        if (g.table[(x << w.bits()) | y] != g.table[(y << w.bits()) | x]) {
          g.symmetric = false;
          break;
        }
  } else if (g.arity == 3) {
    for (uint32_t x = 0; x < n && g.symmetric; ++x)
      for (uint32_t y = 0; y < n && g.symmetric; ++y)
        for (uint32_t z = 0; z < n; ++z) {
          uint32_t v = g.table[((x << w.bits() | y) << w.bits()) | z];
          if (v != g.table[((x << w.bits() | z) << w.bits()) | y] ||
              v != g.table[((y << w.bits() | x) << w.bits()) | z] ||
              v != g.table[((z << w.bits() | y) << w.bits()) | x]) {
            g.symmetric = false;
            break;
          }
        }
  }
  g.is_add3 = false;
  if (g.arity == 3) {
    g.is_add3 = true;
    for (uint32_t x = 0; x < n && g.is_add3; ++x)
      for (uint32_t y = 0; y < n && g.is_add3; ++y)
        for (uint32_t z = 0; z < n; ++z)
          if (g.table[((x << w.bits() | y) << w.bits()) | z] != ((x + y + z) & w.mask())) {
            g.is_add3 = false;
            break;
          }
  }
  return g;
}

// ---- packed engine: members are <=64-bit codes ---------------------------

struct PackedOps {
  int wbits;
  uint32_t mask;
  size_t entries;
  int total_bits;
  bool byte_sliced;  // per-byte LUT applies (w divides 8, whole bytes)

  uint64_t apply2(uint64_t a, uint64_t b, const std::vector<uint32_t>& tab,
                  const std::vector<uint8_t>& lut) const {
    if (byte_sliced) {
      uint64_t r = 0;
      for (int byte = 0; byte < total_bits / 8; ++byte) {
        uint64_t ab = (a >> (8 * byte)) & 0xFF, bb = (b >> (8 * byte)) & 0xFF;
        r |= uint64_t{lut[(ab << 8) | bb]} << (8 * byte);
      }
      return r;
    }
    uint64_t r = 0;
    for (size_t e = 0; e < entries; ++e) {
      uint32_t x = static_cast<uint32_t>(a >> (e * wbits)) & mask;
      uint32_t y = static_cast<uint32_t>(b >> (e * wbits)) & mask;
      r |= uint64_t{tab[(x << wbits) | y]} << (e * wbits);
    }
    return r;
  }

  uint64_t apply3(uint64_t a, uint64_t b, uint64_t c, const std::vector<uint32_t>& tab) const {
    uint64_t r = 0;
    for (size_t e = 0; e < entries; ++e) {
      uint32_t x = static_cast<uint32_t>(a >> (e * wbits)) & mask;
      uint32_t y = static_cast<uint32_t>(b >> (e * wbits)) & mask;
      uint32_t z = static_cast<uint32_t>(c >> (e * wbits)) & mask;
      r |= uint64_t{tab[((x << wbits | y) << wbits) | z]} << (e * wbits);
    }
    return r;
  }
};

std::vector<uint8_t> build_byte_lut(const std::vector<uint32_t>& tab, int wbits) {
  // lut[(a<<8)|b] = entrywise op on two bytes holding 8/w entries each
  std::vector<uint8_t> lut(65536);
  int per_byte = 8 / wbits;
  uint32_t mask = (wbits == 32) ? 0xFFFFFFFFu : ((1u << wbits) - 1);
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b) {
      uint8_t r = 0;
      for (int e = 0; e < per_byte; ++e) {
        uint32_t x = (static_cast<uint32_t>(a) >> (e * wbits)) & mask;
        uint32_t y = (static_cast<uint32_t>(b) >> (e * wbits)) & mask;
        r |= static_cast<uint8_t>(tab[(x << wbits) | y] << (e * wbits));
      }
      lut[(a << 8) | b] = r;
    }
  return lut;
}

std::vector<uint32_t> add2_table(Width w) {
  uint32_t n = w.mask() + 1;
  std::vector<uint32_t> t(size_t{n} * n);
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) t[(x << w.bits()) | y] = (x + y) & w.mask();
  return t;
}

// Membership test over packed codes: a flat bitmap when the code space is
// small enough (dedup inserts dominate the big runs), a hash set otherwise.
class CodeSet {
 public:
  explicit CodeSet(int total_bits) : bitmap_ok_(total_bits <= 32) {
    if (bitmap_ok_) bitmap_.assign(size_t{1} << (std::max(total_bits, 6) - 6), 0);
  }
  bool insert(uint64_t c) {
    if (bitmap_ok_) {
      uint64_t& word = bitmap_[c >> 6];
      uint64_t bit = uint64_t{1} << (c & 63);
      if (word & bit) return false;
      word |= bit;
      return true;
    }
    return set_.insert(c).second;
  }
  // Concurrent test-and-set; only valid in bitmap mode. Read first so the
  // common already-present case never writes the cache line.
  bool insert_atomic(uint64_t c) {
    std::atomic_ref<uint64_t> word(bitmap_[c >> 6]);
    uint64_t bit = uint64_t{1} << (c & 63);
    if (word.load(std::memory_order_relaxed) & bit) return false;
    return (word.fetch_or(bit, std::memory_order_relaxed) & bit) == 0;
  }
  bool bitmap_mode() const { return bitmap_ok_; }

 private:
  bool bitmap_ok_;
  std::vector<uint64_t> bitmap_;
  std::unordered_set<uint64_t> set_;
};

struct PackedClosure {
  std::vector<uint64_t> members;
  bool valid = true;
  int iterations = 0;
};

PackedClosure close_packed(const std::vector<GenTable>& gens, Width w, int k,
                           const std::vector<uint64_t>& seed, uint64_t max_members) {
  PackedOps ops;
  ops.wbits = w.bits();
  ops.mask = w.mask();
  ops.entries = size_t{1} << (w.bits() * k);
  ops.total_bits = static_cast<int>(ops.entries) * w.bits();
  ops.byte_sliced = (8 % w.bits() == 0) && (ops.total_bits % 8 == 0);

  std::vector<std::vector<uint8_t>> luts(gens.size());
  std::vector<uint32_t> add2tab;
  std::vector<uint8_t> add2lut;
  bool need_add2 = false;
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    if (gens[gi].arity == 2 && ops.byte_sliced) luts[gi] = build_byte_lut(gens[gi].table, ops.wbits);
    if (gens[gi].is_add3) need_add2 = true;
  }
  if (need_add2) {
    add2tab = add2_table(w);
    if (ops.byte_sliced) add2lut = build_byte_lut(add2tab, ops.wbits);
  }

  PackedClosure st;
  CodeSet seen(ops.total_bits);
  for (uint64_t s : seed)
    if (seen.insert(s)) st.members.push_back(s);

  // pair-sum pools for add3-shaped generators (shared: the sums are the same)
  std::vector<uint64_t> psum;
  CodeSet psum_seen(need_add2 ? ops.total_bits : 33);

  size_t old_n = 0;
  bool grew = true;
  while (grew || st.iterations == 0) {
    ++st.iterations;
    size_t n = st.members.size();
    std::vector<uint64_t> next;
    auto emit = [&](uint64_t r) {
      if (seen.insert(r)) next.push_back(r);
    };

    for (size_t gi = 0; gi < gens.size(); ++gi) {
      const GenTable& g = gens[gi];
      if (g.arity == 1) {
        for (size_t i = old_n; i < n; ++i) {
          uint64_t r = 0;
          for (size_t e = 0; e < ops.entries; ++e) {
            uint32_t x = static_cast<uint32_t>(st.members[i] >> (e * ops.wbits)) & ops.mask;
            r |= uint64_t{g.table[x]} << (e * ops.wbits);
          }
          emit(r);
        }
      } else if (g.arity == 2) {
        auto ap = [&](uint64_t a, uint64_t b) { return ops.apply2(a, b, g.table, luts[gi]); };
        uint64_t fresh_pairs = uint64_t{n} * (n - old_n);
        int threads = default_thread_count();
        if (g.symmetric && seen.bitmap_mode() && threads > 1 && fresh_pairs > (uint64_t{1} << 22)) {
          // partition the i range; rounds stay barriers, the merge is sorted
          // so the result is independent of scheduling
          size_t chunk_size = std::max<size_t>(64, n / (static_cast<size_t>(threads) * 16));
          size_t num_chunks = (n + chunk_size - 1) / chunk_size;
          std::vector<std::vector<uint64_t>> found(num_chunks);
          std::atomic<size_t> cursor{0};
          auto worker = [&]() {
            while (true) {
              size_t c = cursor.fetch_add(1, std::memory_order_relaxed);
              if (c >= num_chunks) break;
              size_t lo = c * chunk_size, hi = std::min(n, lo + chunk_size);
              std::vector<uint64_t>& local = found[c];
              for (size_t i = lo; i < hi; ++i)
                for (size_t j = (i < old_n ? old_n : i); j < n; ++j) {
                  uint64_t r = ap(st.members[i], st.members[j]);
                  if (seen.insert_atomic(r)) local.push_back(r);
                }
            }
          };
          std::vector<std::thread> pool;
          for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
          for (auto& t : pool) t.join();
          for (const auto& local : found)
            for (uint64_t r : local) next.push_back(r);
        } else {
          for (size_t i = 0; i < n; ++i)
            for (size_t j = (i < old_n ? old_n : i); j < n; ++j) {
              emit(ap(st.members[i], st.members[j]));
              if (!g.symmetric) emit(ap(st.members[j], st.members[i]));
            }
        }
      } else if (g.is_add3) {
        // add3(a,b,c) = add2(add2(a,b),c): grow the pairwise-sum pool, then
        // combine new sums with all members and old sums with new members
        size_t p_before = psum.size();
        for (size_t i = 0; i < n; ++i)
          for (size_t j = (i < old_n ? old_n : i); j < n; ++j) {
            uint64_t s = ops.apply2(st.members[i], st.members[j], add2tab, add2lut);
            if (psum_seen.insert(s)) psum.push_back(s);
          }
        if (psum.size() > max_members * 4) {
          st.valid = false;
          return st;
        }
        for (size_t p = p_before; p < psum.size(); ++p)
          for (size_t c = 0; c < n; ++c)
            emit(ops.apply2(psum[p], st.members[c], add2tab, add2lut));
        for (size_t p = 0; p < p_before; ++p)
          for (size_t c = old_n; c < n; ++c)
            emit(ops.apply2(psum[p], st.members[c], add2tab, add2lut));
      } else {
        // generic ternary: tuples with at least one index >= old_n
        for (size_t i = 0; i < n; ++i)
          for (size_t j = (g.symmetric ? i : 0); j < n; ++j)
            for (size_t l = (g.symmetric ? std::max(j, old_n) : 0); l < n; ++l) {
              if (!g.symmetric && i < old_n && j < old_n && l < old_n) continue;
              emit(ops.apply3(st.members[i], st.members[j], st.members[l], g.table));
            }
      }
      if (st.members.size() + next.size() > max_members) {
        st.valid = false;
        for (uint64_t v : next) st.members.push_back(v);
        return st;
      }
    }
    grew = !next.empty();
    old_n = n;
    std::sort(next.begin(), next.end());
    for (uint64_t v : next) st.members.push_back(v);
    if (!grew) break;
  }
  return st;
}

// ---- generic engine: members are explicit output vectors -----------------

struct GenericClosure {
  std::vector<std::vector<uint32_t>> members;
  std::set<std::vector<uint32_t>> seen;
  bool valid = true;
  int iterations = 0;
};

GenericClosure close_generic(const std::vector<GenTable>& gens, Width w, int k,
                             std::vector<std::vector<uint32_t>> seed, uint64_t max_members) {
  size_t entries = size_t{1} << (w.bits() * k);
  GenericClosure st;
  for (auto& s : seed)
    if (st.seen.insert(s).second) st.members.push_back(std::move(s));

  std::vector<uint32_t> add2tab;
  std::vector<std::vector<uint32_t>> psum;
  std::set<std::vector<uint32_t>> psum_seen;
  for (const GenTable& g : gens)
    if (g.is_add3) {
      add2tab = add2_table(w);
      break;
    }

  auto apply2v = [&](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                     const std::vector<uint32_t>& tab) {
    std::vector<uint32_t> r(entries);
    for (size_t e = 0; e < entries; ++e) r[e] = tab[(a[e] << w.bits()) | b[e]];
    return r;
  };

  size_t old_n = 0;
  bool grew = true;
  while (grew || st.iterations == 0) {
    ++st.iterations;
    size_t n = st.members.size();
    std::vector<std::vector<uint32_t>> next;
    auto emit = [&](std::vector<uint32_t> r) {
      if (st.seen.insert(r).second) next.push_back(std::move(r));
    };

    for (const GenTable& g : gens) {
      if (g.arity == 1) {
        for (size_t i = old_n; i < n; ++i) {
          std::vector<uint32_t> r(entries);
          for (size_t e = 0; e < entries; ++e) r[e] = g.table[st.members[i][e]];
          emit(std::move(r));
        }
      } else if (g.arity == 2) {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = (i < old_n ? old_n : i); j < n; ++j) {
            emit(apply2v(st.members[i], st.members[j], g.table));
            if (!g.symmetric) emit(apply2v(st.members[j], st.members[i], g.table));
          }
      } else if (g.is_add3) {
        size_t p_before = psum.size();
        for (size_t i = 0; i < n; ++i)
          for (size_t j = (i < old_n ? old_n : i); j < n; ++j) {
            std::vector<uint32_t> s = apply2v(st.members[i], st.members[j], add2tab);
            if (psum_seen.insert(s).second) psum.push_back(std::move(s));
          }
        if (psum.size() > max_members * 4) {
          st.valid = false;
          return st;
        }
        for (size_t p = p_before; p < psum.size(); ++p)
          for (size_t c = 0; c < n; ++c) emit(apply2v(psum[p], st.members[c], add2tab));
        for (size_t p = 0; p < p_before; ++p)
          for (size_t c = old_n; c < n; ++c) emit(apply2v(psum[p], st.members[c], add2tab));
      } else {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = (g.symmetric ? i : 0); j < n; ++j)
            for (size_t l = (g.symmetric ? std::max(j, old_n) : 0); l < n; ++l) {
              if (!g.symmetric && i < old_n && j < old_n && l < old_n) continue;
              std::vector<uint32_t> r(entries);
              for (size_t e = 0; e < entries; ++e)
                r[e] = g.table[((st.members[i][e] << w.bits() | st.members[j][e]) << w.bits()) |
                               st.members[l][e]];
              emit(std::move(r));
            }
      }
      if (st.members.size() + next.size() > max_members) {
        st.valid = false;
        for (auto& v : next) st.members.push_back(std::move(v));
        return st;
      }
    }
    grew = !next.empty();
    old_n = n;
    std::sort(next.begin(), next.end());
    for (auto& v : next) st.members.push_back(std::move(v));
    if (!grew) break;
  }
  return st;
}

}  // namespace

ClosureResult close(const std::vector<Operator>& generators, Width w, int num_vars,
                    const ClosureOptions& options) {
  if (num_vars < 1 || w.bits() * num_vars > 16)
    throw usage_error("closure needs 1 <= w*k <= 16 (function space must fit)");
  std::vector<GenTable> gens;
  gens.reserve(generators.size());
  for (const Operator& op : generators) gens.push_back(prepare_generator(op, w));

  ClosureResult result;
  for (const Operator& op : generators) result.generator_names.push_back(op.name());
  result.width_bits = w.bits();
  result.num_vars = num_vars;
  result.seed_name = std::string(closure_seed_name(options.seed));

  size_t entries = size_t{1} << (w.bits() * num_vars);
  result.packed = entries * w.bits() <= 64;

  if (result.packed) {
    std::vector<uint64_t> seed;
    for (int j = 1; j <= num_vars; ++j) seed.push_back(projection_vector(w, num_vars, j).code());
    if (options.seed == ClosureSeed::projections_and_constants)
      for (uint32_t c = 0; c <= w.mask(); ++c)
        seed.push_back(constant_vector(w, num_vars, c).code());
    PackedClosure st = close_packed(gens, w, num_vars, seed, options.max_members);
    result.valid = st.valid;
    result.iterations = st.iterations;
    result.codes = std::move(st.members);
    for (uint64_t c : result.codes)
      if (FunctionVector::from_code(c, w, num_vars).is_constant()) {
        result.contains_constant = true;
        break;
      }
  } else {
    std::vector<std::vector<uint32_t>> seed;
    for (int j = 1; j <= num_vars; ++j) seed.push_back(projection_vector(w, num_vars, j).outputs());
    if (options.seed == ClosureSeed::projections_and_constants)
      for (uint32_t c = 0; c <= w.mask(); ++c)
        seed.push_back(constant_vector(w, num_vars, c).outputs());
    GenericClosure st = close_generic(gens, w, num_vars, std::move(seed), options.max_members);
    result.valid = st.valid;
    result.iterations = st.iterations;
    result.big_members = std::move(st.members);
    for (const auto& m : result.big_members)
      if (std::all_of(m.begin(), m.end(), [&](uint32_t v) { return v == m[0]; })) {
        result.contains_constant = true;
        break;
      }
  }
  return result;
}

bool verify_fixpoint(const ClosureResult& result, const std::vector<Operator>& generators) {
  if (!result.valid) return false;
  Width w(result.width_bits);
  int k = result.num_vars;
  std::vector<GenTable> gens;
  for (const Operator& op : generators) gens.push_back(prepare_generator(op, w));

  if (result.packed) {
    PackedOps ops;
    ops.wbits = w.bits();
    ops.mask = w.mask();
    ops.entries = size_t{1} << (w.bits() * k);
    ops.total_bits = static_cast<int>(ops.entries) * w.bits();
    ops.byte_sliced = (8 % w.bits() == 0) && (ops.total_bits % 8 == 0);

    const std::vector<uint64_t>& mem = result.codes;
    std::unordered_set<uint64_t> inset(mem.begin(), mem.end());
    size_t n = mem.size();
    for (const GenTable& g : gens) {
      std::vector<uint8_t> lut;
      if (g.arity == 2 && ops.byte_sliced) lut = build_byte_lut(g.table, ops.wbits);
      if (g.arity == 1) {
        for (uint64_t a : mem) {
          uint64_t r = 0;
          for (size_t e = 0; e < ops.entries; ++e)
            r |= uint64_t{g.table[static_cast<uint32_t>(a >> (e * ops.wbits)) & ops.mask]}
                 << (e * ops.wbits);
          if (!inset.count(r)) return false;
        }
      } else if (g.arity == 2) {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = g.symmetric ? i : 0; j < n; ++j)
            if (!inset.count(ops.apply2(mem[i], mem[j], g.table, lut))) return false;
      } else if (g.is_add3) {
        // (a+b)+c in set for all a,b,c <=> s+c in set for every pairwise sum s
        std::vector<uint32_t> add2tab = add2_table(w);
        std::vector<uint8_t> add2lut;
        if (ops.byte_sliced) add2lut = build_byte_lut(add2tab, ops.wbits);
        std::unordered_set<uint64_t> sums;
        for (size_t i = 0; i < n; ++i)
          for (size_t j = i; j < n; ++j)
            sums.insert(ops.apply2(mem[i], mem[j], add2tab, add2lut));
        for (uint64_t s : sums)
          for (size_t c = 0; c < n; ++c)
            if (!inset.count(ops.apply2(s, mem[c], add2tab, add2lut))) return false;
      } else {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = g.symmetric ? i : 0; j < n; ++j)
            for (size_t l = g.symmetric ? j : 0; l < n; ++l)
              if (!inset.count(ops.apply3(mem[i], mem[j], mem[l], g.table))) return false;
      }
    }
    return true;
  }

  // generic path: explicit output vectors
  size_t n = result.size();
  std::vector<std::vector<uint32_t>> mem(n);
  std::set<std::vector<uint32_t>> inset;
  for (size_t i = 0; i < n; ++i) {
    mem[i] = result.member(i).outputs();
    inset.insert(mem[i]);
  }
  size_t entries = size_t{1} << (w.bits() * k);

  auto apply2v = [&](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                     const std::vector<uint32_t>& tab) {
    std::vector<uint32_t> r(entries);
    for (size_t e = 0; e < entries; ++e) r[e] = tab[(a[e] << w.bits()) | b[e]];
    return r;
  };

  for (const GenTable& g : gens) {
    if (g.arity == 1) {
      for (const auto& a : mem) {
        std::vector<uint32_t> r(entries);
        for (size_t e = 0; e < entries; ++e) r[e] = g.table[a[e]];
        if (!inset.count(r)) return false;
      }
    } else if (g.arity == 2) {
      for (size_t i = 0; i < n; ++i)
        for (size_t j = g.symmetric ? i : 0; j < n; ++j)
          if (!inset.count(apply2v(mem[i], mem[j], g.table))) return false;
    } else if (g.is_add3) {
      std::vector<uint32_t> add2tab = add2_table(w);
      std::set<std::vector<uint32_t>> sums;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) sums.insert(apply2v(mem[i], mem[j], add2tab));
      for (const auto& s : sums)
        for (size_t c = 0; c < n; ++c)
          if (!inset.count(apply2v(s, mem[c], add2tab))) return false;
    } else {
      for (size_t i = 0; i < n; ++i)
        for (size_t j = g.symmetric ? i : 0; j < n; ++j)
          for (size_t l = g.symmetric ? j : 0; l < n; ++l) {
            std::vector<uint32_t> r(entries);
            for (size_t e = 0; e < entries; ++e)
              r[e] = g.table[((mem[i][e] << w.bits() | mem[j][e]) << w.bits()) | mem[l][e]];
            if (!inset.count(r)) return false;
          }
    }
  }
  return true;
}

void dump_closure(const ClosureResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write closure dump '" + path.string() + "'");
  if (result.packed) {
    std::vector<uint64_t> sorted = result.codes;
    std::sort(sorted.begin(), sorted.end());
    for (uint64_t c : sorted) out << c << "\n";
  } else {
    std::vector<std::vector<uint32_t>> sorted = result.big_members;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    Width w(result.width_bits);
    for (const auto& m : sorted)
      out << FunctionVector(w, result.num_vars, m).decimal_code() << "\n";
  }
  if (!out) throw usage_error("I/O failure writing '" + path.string() + "'");
}

std::vector<FunctionVector> load_closure_dump(const std::filesystem::path& path, Width w,
                                              int num_vars) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open closure dump '" + path.string() + "'");
  std::vector<FunctionVector> members;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    members.push_back(FunctionVector::from_decimal(line, w, num_vars));
  }
  return members;
}

FootnoteFlags footnote_conditions(const FunctionVector& fv) {
  if (fv.width().bits() != 2 || fv.num_vars() != 2)
    throw usage_error("footnote conditions are defined for w=2, k=2 only");
  const std::vector<uint32_t>& f = fv.outputs();
  auto at = [&](int x, int y) { return f[(x & 3) + 4 * (y & 3)]; };
  FootnoteFlags fl;
  fl.i = at(0, 0) == 0;
  fl.ii = fl.iii = fl.iv = fl.v = true;
  for (int x : {1, 3})
    for (int y : {1, 3})
      if (is_even(at(x, y))) fl.ii = false;
  for (int x : {0, 2})
    for (int y : {0, 2})
      if (is_odd(at(x, y))) fl.iii = false;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      uint32_t a = at(x, y), b = at(x + 2, y), c = at(x, y + 2), d = at(x + 2, y + 2);
      if (((a ^ b) | (a ^ c) | (a ^ d)) & 1u) fl.iv = false;
      if (((c - a) & 3u) != ((d - b) & 3u) || ((b - a) & 3u) != ((d - c) & 3u)) fl.v = false;
    }
  return fl;
}

}  // namespace alusafe
