// alusafe: safety analysis for encrypted-ALU arithmetic operators.
//
// Subcommands: analyze, patch, witness, closure, count, search.
// Exit codes: 0 success (all SAFE for analyze), 1 finding-dependent failure
// (an UNSAFE operator, a safe witness target, an aborted closure), 2 usage.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alusafe/closure.hpp"
#include "alusafe/constant_search.hpp"
#include "alusafe/counting.hpp"
#include "alusafe/json_out.hpp"
#include "alusafe/operator_io.hpp"
#include "alusafe/safety.hpp"
#include "alusafe/witness.hpp"

namespace {

using alusafe::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw alusafe::usage_error("cannot write output file '" + out_path + "'");
  out << text;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::optional<alusafe::Width> opt_width(int bits) {
  if (bits == 0) return std::nullopt;
  return alusafe::Width(bits);
}

std::string tuple_text(const std::vector<uint32_t>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

int cmd_analyze(const std::vector<std::string>& sources, int width_bits, uint64_t seed,
                const std::string& format, const std::string& out_path) {
  alusafe::AnalyzeOptions opts;
  opts.seed = seed;
  bool any_unsafe = false;
  json reports = json::array();
  std::string text;
  for (const std::string& src : sources) {
    alusafe::Operator op = alusafe::resolve_operator(src, opt_width(width_bits));
    alusafe::SafetyReport r = alusafe::analyze(op, opts);
    any_unsafe = any_unsafe || !r.safe();
    reports.push_back(alusafe::to_json(r));
    text += r.op_name + "@w" + std::to_string(r.width_bits) + ": " + std::string(r.verdict());
    if (!r.condition_zero.pass)
      text += " condition (i) fails: f(0,...,0) = " + std::to_string(r.condition_zero.value_at_zero);
    if (!r.condition_odd.pass)
      text += " condition (ii) fails at " + tuple_text(r.condition_odd.violating_tuple) + " -> " +
              std::to_string(r.condition_odd.output);
    text += r.exhaustive ? " [exhaustive," : " [sampled,";
    text += " " + std::to_string(r.tuples_checked) + " odd tuples]\n";
  }
  emit(format == "json" ? reports.dump(2) + "\n" : text, out_path);
  return any_unsafe ? 1 : 0;
}

int cmd_patch(const std::string& source, int width_bits, const std::string& out_file,
              const std::string& format, const std::string& out_path) {
  alusafe::Operator op = alusafe::resolve_operator(source, opt_width(width_bits)).tabulated();
  alusafe::Operator patched = alusafe::patch(op);
  size_t delta = 0;
  for (size_t i = 0; i < op.table().size(); ++i)
    if (op.table()[i] != patched.table()[i]) ++delta;
  bool zero_changed = op.table()[0] != patched.table()[0];
  alusafe::save_operator(patched, out_file);
  if (format == "json") {
    json j;
    j["op"] = op.name();
    j["width"] = op.width().bits();
    j["changed_entries"] = delta;
    j["zero_point_changed"] = zero_changed;
    j["out"] = out_file;
    emit(j.dump(2) + "\n", out_path);
  } else {
    emit(op.name() + "@w" + std::to_string(op.width().bits()) + ": patched " +
             std::to_string(delta) + " entries" + (zero_changed ? " (zero point forced)" : "") +
             " -> " + out_file + "\n",
         out_path);
  }
  return 0;
}

int cmd_witness(const std::string& source, int width_bits, const std::string& format,
                const std::string& out_path) {
  alusafe::Operator op = alusafe::resolve_operator(source, opt_width(width_bits));
  alusafe::SafetyReport r = alusafe::analyze(op);
  if (r.safe()) {
    std::cerr << op.name() << " is SAFE; no constant-producing witness exists\n";
    return 1;
  }
  alusafe::Witness w = r.condition_zero.pass ? alusafe::witness_odd_violation(op)
                                             : alusafe::witness_zero_violation(op);
  if (format == "json") {
    emit(alusafe::to_json(w).dump(2) + "\n", out_path);
  } else {
    std::string text = print_formula(w.formula) + "\n";
    text += "constant " + std::to_string(w.claimed_constant);
    text += w.kind == alusafe::WitnessKind::parity_coverage_computation
                ? " on every input multiset with both parities"
                : " on all inputs";
    text += w.verification.exhaustive ? ", exhaustive (" : ", sampled (";
    text += std::to_string(w.verification.inputs_checked) + " inputs)";
    text += w.verification.verified ? "\n" : " VERIFICATION FAILED\n";
    emit(text, out_path);
  }
  return w.verification.verified ? 0 : 1;
}

int cmd_closure(const std::string& ops_list, int width_bits, int vars, const std::string& seed_name,
                const std::string& dump_path, const std::string& format,
                const std::string& out_path) {
  alusafe::Width w(width_bits);
  std::vector<alusafe::Operator> gens;
  for (const std::string& name : split_commas(ops_list))
    gens.push_back(alusafe::resolve_operator(name, w));
  alusafe::ClosureOptions opts;
  opts.seed = alusafe::closure_seed_by_name(seed_name);
  alusafe::ClosureResult result = alusafe::close(gens, w, vars, opts);
  if (!dump_path.empty()) alusafe::dump_closure(result, dump_path);
  if (format == "csv") {
    std::string csv = "generators,width,vars,seed,size,iterations,contains_constant,valid\n";
    std::string names;
    for (size_t i = 0; i < result.generator_names.size(); ++i)
      names += (i ? "+" : "") + result.generator_names[i];
    csv += names + "," + std::to_string(result.width_bits) + "," +
           std::to_string(result.num_vars) + "," + result.seed_name + "," +
           std::to_string(result.size()) + "," + std::to_string(result.iterations) + "," +
           (result.contains_constant ? "true" : "false") + "," +
           (result.valid ? "true" : "false") + "\n";
    emit(csv, out_path);
  } else {
    emit(alusafe::to_json(result).dump(2) + "\n", out_path);
  }
  return result.valid ? 0 : 1;
}

int cmd_count(int width_bits, int arity, const std::string& conditions, bool brute, bool footnote,
              const std::string& format, const std::string& out_path) {
  if (footnote) {
    uint64_t n = alusafe::count_footnote_tables();
    if (format == "csv") {
      emit("width,arity,conditions,brute,reported_available,reported_formable\n2,2,i+ii+iii+iv+v," +
               std::to_string(n) + ",1282,4096\n",
           out_path);
    } else {
      json j;
      j["width"] = 2;
      j["arity"] = 2;
      j["conditions"] = {"i", "ii", "iii", "iv", "v"};
      j["brute"] = n;
      j["reported_available"] = 1282;
      j["reported_formable"] = 4096;
      emit(j.dump(2) + "\n", out_path);
    }
    return 0;
  }
  alusafe::CountConditions conds;
  for (const std::string& c : split_commas(conditions)) {
    if (c == "i")
      conds.i = true;
    else if (c == "ii")
      conds.ii = true;
    else if (c == "iii")
      conds.iii = true;
    else
      throw alusafe::usage_error("unknown condition '" + c + "' (want i, ii, iii)");
  }
  alusafe::CountResult r = alusafe::count_tables(alusafe::Width(width_bits), arity, conds, brute);
  if (format == "csv") {
    std::string conds_text;
    if (r.conditions.i) conds_text += "i";
    if (r.conditions.ii) conds_text += std::string(conds_text.empty() ? "" : "+") + "ii";
    if (r.conditions.iii) conds_text += std::string(conds_text.empty() ? "" : "+") + "iii";
    std::string csv = "width,arity,conditions,analytic_log2,analytic,brute\n";
    csv += std::to_string(r.width_bits) + "," + std::to_string(r.arity) + "," + conds_text + "," +
           std::to_string(r.analytic_log2) + "," +
           (r.analytic ? std::to_string(*r.analytic) : "2^" + std::to_string(r.analytic_log2)) +
           "," + (r.brute ? std::to_string(*r.brute) : "skipped") + "\n";
    emit(csv, out_path);
  } else {
    emit(alusafe::to_json(r).dump(2) + "\n", out_path);
  }
  return 0;
}

int cmd_search(const std::string& ops_list, int width_bits, int vars, int max_nodes,
               bool until_closure, const std::string& format, const std::string& out_path) {
  alusafe::Width w(width_bits);
  alusafe::OperatorSet ops(w);
  for (const std::string& name : split_commas(ops_list))
    ops.add(alusafe::resolve_operator(name, w));
  if (until_closure) max_nodes = 0;
  if (max_nodes == 0 && !until_closure)
    throw alusafe::usage_error("give --max-nodes N or --until-closure");
  alusafe::SearchOptions opts;
  opts.max_nodes = max_nodes;
  alusafe::SearchResult r = alusafe::search_constants(ops, vars, opts);
  if (format == "json") {
    emit(alusafe::to_json(r).dump(2) + "\n", out_path);
  } else {
    std::string text;
    if (r.findings.empty())
      text = "no constant formulas found\n";
    else
      for (const alusafe::ConstantFinding& f : r.findings)
        text += f.formula_text + " = " + std::to_string(f.constant) + " (" +
                (f.exhaustive ? "exhaustive" : "sampled") + ", " +
                std::to_string(f.assignments_checked) + " assignments)\n";
    text += "semantic classes: " + std::to_string(r.semantic_classes) +
            ", max size: " + std::to_string(r.max_size_reached) +
            (r.complete ? "" : " (INCOMPLETE: class bound hit)") + "\n";
    emit(text, out_path);
  }
  return r.complete ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safety analysis for encrypted-ALU arithmetic operators"};
  app.require_subcommand(1);

  std::vector<std::string> op_sources;
  std::string ops_list, out_path, out_file, dump_path;
  std::string format = "text";
  std::string conditions, closure_seed = "projections";
  int width_bits = 0, vars = 2, arity = 2, max_nodes = 0;
  uint64_t seed = 1;
  bool brute = false, footnote = false, until_closure = false;

  auto add_format = [&](CLI::App* cmd, const std::string& choices) {
    cmd->add_option("--format", format, "output format (" + choices + ")")
        ->check(CLI::IsMember(split_commas(choices)));
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "decide operator safety");
  analyze->add_option("--op", op_sources, "builtin name or operator file (repeatable)")->required();
  analyze->add_option("--width", width_bits, "bit width for builtins")->check(CLI::Range(1, 32));
  analyze->add_option("--seed", seed, "seed for sampled verdicts (default 1)");
  add_format(analyze, "text,json");

  CLI::App* patch = app.add_subcommand("patch", "write a safe variant of an operator");
  patch->add_option("--op", ops_list, "builtin name or operator file")->required();
  patch->add_option("--width", width_bits, "bit width for builtins")->check(CLI::Range(1, 32));
  patch->add_option("--out-op", out_file, "output operator file")->required();
  add_format(patch, "text,json");

  CLI::App* witness = app.add_subcommand("witness", "construct a constant-producing witness");
  witness->add_option("--op", ops_list, "builtin name or operator file")->required();
  witness->add_option("--width", width_bits, "bit width for builtins")->check(CLI::Range(1, 32));
  add_format(witness, "text,json");

  CLI::App* closure = app.add_subcommand("closure", "fixpoint closure of an operator set");
  closure->add_option("--ops", ops_list, "comma-separated operator names/files")->required();
  closure->add_option("--width", width_bits, "bit width")->required()->check(CLI::Range(1, 16));
  closure->add_option("--vars", vars, "number of variables (default 2)");
  closure->add_option("--closure-seed", closure_seed,
                      "projections (default) or projections+constants");
  closure->add_option("--dump", dump_path, "write sorted member codes to this file");
  add_format(closure, "json,csv");
  closure->get_option("--format")->default_str("json");

  CLI::App* count = app.add_subcommand("count", "count tables satisfying safety conditions");
  count->add_option("--width", width_bits, "bit width")->check(CLI::Range(1, 32));
  count->add_option("--arity", arity, "operator arity (default 2)")->check(CLI::Range(1, 3));
  count->add_option("--conditions", conditions, "subset of i,ii,iii (comma separated)");
  count->add_flag("--brute", brute, "run the streaming full enumeration (table space <= 2^32)");
  count->add_flag("--footnote", footnote,
                  "count 2-bit tables satisfying footnote conditions (i)-(v)");
  add_format(count, "json,csv");
  count->get_option("--format")->default_str("json");

  CLI::App* search = app.add_subcommand("search", "enumerate formulas, reporting constants");
  search->add_option("--ops", ops_list, "comma-separated operator names/files")->required();
  search->add_option("--width", width_bits, "bit width")->required()->check(CLI::Range(1, 16));
  search->add_option("--vars", vars, "number of variables (default 2)");
  search->add_option("--max-nodes", max_nodes, "formula size bound (total tree nodes)");
  search->add_flag("--until-closure", until_closure, "enumerate until no new functions appear");
  search->add_option("--seed", seed, "seed echoed in sampled coverage (default 1)");
  add_format(search, "text,json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(op_sources, width_bits, seed, format, out_path);
    if (app.got_subcommand(patch))
      return cmd_patch(ops_list, width_bits, out_file, format, out_path);
    if (app.got_subcommand(witness)) return cmd_witness(ops_list, width_bits, format, out_path);
    if (app.got_subcommand(closure))
      return cmd_closure(ops_list, width_bits, vars, closure_seed, dump_path,
                         format == "text" ? "json" : format, out_path);
    if (app.got_subcommand(count))
      return cmd_count(width_bits, arity, conditions, brute, footnote,
                       format == "text" ? "json" : format, out_path);
    if (app.got_subcommand(search))
      return cmd_search(ops_list, width_bits, vars, max_nodes, until_closure, format, out_path);
  } catch (const alusafe::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const alusafe::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const alusafe::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
