#include "alusafe/constant_search.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

namespace alusafe {

std::optional<ConstantFinding> is_constant(const Formula::Ptr& f, const OperatorSet& ops,
                                           const IsConstantOptions& options) {
  CompiledFormula cf(f, ops);
  Width w = ops.width();
  size_t k = cf.variables().size();
  std::vector<uint32_t> vals(k);
  std::vector<uint32_t> scratch;

  ConstantFinding finding;
  finding.formula = f;
  finding.seed = options.seed;

  if (static_cast<int>(w.bits() * k) <= options.exhaustive_bits) {
    finding.exhaustive = true;
    uint64_t total = uint64_t{1} << (w.bits() * k);
    uint32_t first = 0;
    for (uint64_t i = 0; i < total; ++i) {
      uint64_t rest = i;
      for (size_t j = 0; j < k; ++j) {
        vals[j] = static_cast<uint32_t>(rest) & w.mask();
        rest >>= w.bits();
      }
      uint32_t v = cf.eval(vals, scratch);
      ++finding.assignments_checked;
      if (i == 0)
        first = v;
      else if (v != first)
        return std::nullopt;
    }
    finding.constant = first;
  } else {
    finding.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    uint32_t first = 0;
    for (uint64_t i = 0; i < options.sample_count; ++i) {
      for (size_t j = 0; j < k; ++j) vals[j] = static_cast<uint32_t>(rng()) & w.mask();
      uint32_t v = cf.eval(vals, scratch);
      ++finding.assignments_checked;
      if (i == 0)
        first = v;
      else if (v != first)
        return std::nullopt;
    }
    finding.constant = first;
  }
  finding.formula_text = print_formula(f);
  return finding;
}

namespace {

struct SemClass {
  std::vector<uint32_t> outputs;
  int size;            // minimal formula size (total nodes)
  int op_index;        // -1 for a variable
  int var_index;       // for variables
  std::array<int, 3> children{-1, -1, -1};
};

struct Enumerator {
  const OperatorSet& ops;
  Width w;
  int num_vars;
  std::vector<std::string> var_names;
  std::vector<const Operator*> gen;      // sorted by name
  std::vector<std::vector<uint32_t>> gen_table;  // dense tables

  std::vector<SemClass> classes;
  std::map<std::vector<uint32_t>, int> class_of;
  std::vector<std::vector<int>> by_size;  // size -> class indices

  Formula::Ptr rebuild(int cls) const {
    const SemClass& c = classes[cls];
    if (c.op_index < 0) return Formula::var(var_names[c.var_index]);
    std::vector<Formula::Ptr> args;
    for (int j = 0; j < gen[c.op_index]->arity(); ++j) args.push_back(rebuild(c.children[j]));
    return Formula::apply(gen[c.op_index]->name(), std::move(args));
  }
};

}  // namespace

SearchResult search_constants(const OperatorSet& ops, int num_vars, const SearchOptions& options) {
  Width w = ops.width();
  if (num_vars < 1) throw usage_error("search needs at least one variable");
  if (w.bits() * num_vars > 20)
    throw usage_error("search requires width * vars <= 20 for exhaustive tabulation");

  Enumerator en{ops, w, num_vars, canonical_var_names(num_vars), {}, {}, {}, {}, {}};
  for (const std::string& name : ops.names()) en.gen.push_back(&ops.at(name));
  for (const Operator* g : en.gen) {
    if (!Operator::tabulatable(w, g->arity()))
      throw usage_error("operator '" + g->name() + "' too wide to tabulate for search");
    Operator dense = g->tabulated();
    en.gen_table.emplace_back(dense.table().begin(), dense.table().end());
  }

  SearchResult result;
  size_t entries = size_t{1} << (w.bits() * num_vars);

  auto add_class = [&](std::vector<uint32_t> outputs, int size, int op_index, int var_index,
                       std::array<int, 3> children) -> int {
    auto [it, fresh] = en.class_of.try_emplace(outputs, static_cast<int>(en.classes.size()));
    if (!fresh) return -1;
    SemClass c;
    c.outputs = std::move(outputs);
    c.size = size;
    c.op_index = op_index;
    c.var_index = var_index;
    c.children = children;
    en.classes.push_back(std::move(c));
    if (static_cast<int>(en.by_size.size()) <= size) en.by_size.resize(size + 1);
    en.by_size[size].push_back(static_cast<int>(en.classes.size()) - 1);
    return static_cast<int>(en.classes.size()) - 1;
  };

  auto note_constant = [&](int cls) {
    const SemClass& c = en.classes[cls];
    if (!std::all_of(c.outputs.begin(), c.outputs.end(),
                     [&](uint32_t v) { return v == c.outputs[0]; }))
      return;
    ConstantFinding f;
    f.formula = en.rebuild(cls);
    f.formula_text = print_formula(f.formula);
    f.constant = c.outputs[0];
    f.exhaustive = true;
    f.assignments_checked = entries;
    result.findings.push_back(std::move(f));
  };

  for (int j = 0; j < num_vars; ++j) {
    int cls = add_class(projection_vector(w, num_vars, j + 1).outputs(), 1, -1, j, {});
    if (cls >= 0) note_constant(cls);
  }
  result.max_size_reached = 1;

  int max_arity = 1;
  for (const Operator* g : en.gen) max_arity = std::max(max_arity, g->arity());
  int last_growth = 1;

  for (int s = 2;; ++s) {
    if (options.max_nodes > 0 && s > options.max_nodes) break;
    if (options.max_nodes == 0 && s > 1 + max_arity * last_growth) break;  // closure reached
    if (static_cast<int>(en.by_size.size()) <= s) en.by_size.resize(s + 1);

    bool grew = false;
    for (size_t gi = 0; gi < en.gen.size(); ++gi) {
      const Operator& g = *en.gen[gi];
      const std::vector<uint32_t>& tab = en.gen_table[gi];
      int a = g.arity();
      // compositions: children sizes s1 + ... + sa = s - 1
      std::array<int, 3> sizes{0, 0, 0};
      std::array<int, 3> child{-1, -1, -1};
      std::vector<uint32_t> out(entries);

      auto combine = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == a - 1) {
          sizes[pos] = remaining;
          if (remaining < 1 || remaining >= static_cast<int>(en.by_size.size())) return;
          // iterate class tuples for the chosen size split
          std::array<const std::vector<int>*, 3> pools{};
          for (int j = 0; j < a; ++j) {
            pools[j] = &en.by_size[sizes[j]];
            if (pools[j]->empty()) return;
          }
          std::array<size_t, 3> idx{0, 0, 0};
          while (true) {
            for (int j = 0; j < a; ++j) child[j] = (*pools[j])[idx[j]];
            const uint32_t* c0 = en.classes[child[0]].outputs.data();
            const uint32_t* c1 = a > 1 ? en.classes[child[1]].outputs.data() : nullptr;
            const uint32_t* c2 = a > 2 ? en.classes[child[2]].outputs.data() : nullptr;
            int wb = w.bits();
            for (size_t e = 0; e < entries; ++e) {
              uint32_t index = c0[e];
              if (a > 1) index = (index << wb) | c1[e];
              if (a > 2) index = (index << wb) | c2[e];
              out[e] = tab[index];
            }
            int cls = add_class(out, s, static_cast<int>(gi), -1, child);
            if (cls >= 0) {
              grew = true;
              note_constant(cls);
            }
            int j = a - 1;
            while (j >= 0 && ++idx[j] == pools[j]->size()) idx[j--] = 0;
            if (j < 0) break;
          }
          return;
        }
        for (int s1 = 1; s1 <= remaining - (a - 1 - pos); ++s1) {
          if (s1 >= static_cast<int>(en.by_size.size()) || en.by_size[s1].empty()) continue;
          sizes[pos] = s1;
          self(self, pos + 1, remaining - s1);
        }
      };
      if (s - 1 >= a) combine(combine, 0, s - 1);

      if (en.classes.size() > options.max_classes) {
        result.complete = false;
        result.semantic_classes = en.classes.size();
        result.max_size_reached = s;
        return result;
      }
    }
    result.max_size_reached = s;
    if (grew) last_growth = s;
  }

  result.semantic_classes = en.classes.size();
  if (options.collect_classes)
    for (const SemClass& c : en.classes)
      result.class_vectors.emplace_back(w, num_vars, c.outputs);
  return result;
}

}  // namespace alusafe
