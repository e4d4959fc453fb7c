#include "alusafe/json_out.hpp"

namespace alusafe {

json to_json(const SafetyReport& r) {
  json j;
  j["op"] = r.op_name;
  j["width"] = r.width_bits;
  j["arity"] = r.arity;
  j["condition_zero"] = {{"pass", r.condition_zero.pass},
                         {"value_at_zero", r.condition_zero.value_at_zero}};
  json odd;
  odd["pass"] = r.condition_odd.pass;
  if (!r.condition_odd.pass) {
    odd["violating_tuple"] = r.condition_odd.violating_tuple;
    odd["output"] = r.condition_odd.output;
  }
  j["condition_odd"] = odd;
  j["verdict"] = std::string(r.verdict());
  json cov;
  cov["mode"] = r.exhaustive ? "exhaustive" : "sampled";
  cov["odd_tuples_checked"] = r.tuples_checked;
  if (!r.exhaustive) cov["seed"] = r.seed;
  j["coverage"] = cov;
  return j;
}

json to_json(const Witness& w) {
  json j;
  j["kind"] = w.kind == WitnessKind::constant_formula ? "constant_formula"
                                                      : "parity_coverage_computation";
  j["op"] = w.op_name;
  j["width"] = w.width_bits;
  j["case"] = w.case_name;
  j["formula"] = print_formula(w.formula);
  j["claimed_constant"] = w.claimed_constant;
  json d;
  if (w.k0) d["k0"] = *w.k0;
  if (w.k1) d["k1"] = *w.k1;
  if (!w.violating_tuple.empty()) d["violating_tuple"] = w.violating_tuple;
  if (w.odd_scalar) d["odd_scalar"] = *w.odd_scalar;
  j["derivation"] = d;
  j["verification"] = {{"verified", w.verification.verified},
                       {"mode", w.verification.exhaustive ? "exhaustive" : "sampled"},
                       {"inputs_checked", w.verification.inputs_checked}};
  return j;
}

json to_json(const ConstantFinding& f) {
  json j;
  j["formula"] = f.formula_text;
  j["constant"] = f.constant;
  json cov;
  cov["mode"] = f.exhaustive ? "exhaustive" : "sampled";
  cov["assignments_checked"] = f.assignments_checked;
  if (!f.exhaustive) cov["seed"] = f.seed;
  j["coverage"] = cov;
  return j;
}

json to_json(const SearchResult& r) {
  json j;
  j["complete"] = r.complete;
  j["semantic_classes"] = r.semantic_classes;
  j["max_size_reached"] = r.max_size_reached;
  json arr = json::array();
  for (const ConstantFinding& f : r.findings) arr.push_back(to_json(f));
  j["findings"] = arr;
  return j;
}

json to_json(const ClosureResult& r) {
  json j;
  j["generators"] = r.generator_names;
  j["width"] = r.width_bits;
  j["vars"] = r.num_vars;
  j["seed"] = r.seed_name;
  j["valid"] = r.valid;
  j["size"] = r.size();
  j["iterations"] = r.iterations;
  j["contains_constant"] = r.contains_constant;
  return j;
}

json to_json(const CountResult& r) {
  json j;
  j["width"] = r.width_bits;
  j["arity"] = r.arity;
  json conds = json::array();
  if (r.conditions.i) conds.push_back("i");
  if (r.conditions.ii) conds.push_back("ii");
  if (r.conditions.iii) conds.push_back("iii");
  j["conditions"] = conds;
  j["analytic_log2"] = r.analytic_log2;
  if (r.analytic)
    j["analytic"] = *r.analytic;
  else
    j["analytic"] = "2^" + std::to_string(r.analytic_log2);
  if (r.brute)
    j["brute"] = *r.brute;
  else
    j["brute"] = "skipped";
  return j;
}

}  // namespace alusafe
