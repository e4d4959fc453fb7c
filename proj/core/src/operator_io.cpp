#include "alusafe/operator_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace alusafe {

Operator parse_operator_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("operator file is not valid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw parse_error("operator file must be a JSON object", 0);
  for (const char* key : {"name", "width", "arity", "table"})
    if (!j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"", 0);
  if (!j["name"].is_string()) throw parse_error("\"name\" must be a string", 0);
  if (!j["width"].is_number_integer() || !j["arity"].is_number_integer())
    throw parse_error("\"width\" and \"arity\" must be integers", 0);
  if (!j["table"].is_array()) throw parse_error("\"table\" must be an array", 0);

  Width w(j["width"].get<int>());
  int arity = j["arity"].get<int>();
  std::vector<uint32_t> table;
  table.reserve(j["table"].size());
  for (const auto& e : j["table"]) {
    if (!e.is_number_integer() || e.get<int64_t>() < 0)
      throw parse_error("table entry " + std::to_string(table.size()) +
                            " is not a non-negative integer",
                        table.size());
    int64_t v = e.get<int64_t>();
    if (v > w.mask())
      throw parse_error("table entry " + std::to_string(v) + " at index " +
                            std::to_string(table.size()) + " is out of range for width " +
                            std::to_string(w.bits()),
                        table.size());
    table.push_back(static_cast<uint32_t>(v));
  }
  try {
    return Operator::dense(j["name"].get<std::string>(), w, arity, std::move(table));
  } catch (const usage_error& e) {
    throw parse_error(e.what(), 0);
  }
}

Operator load_operator(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open operator file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator_json(ss.str());
}

std::string operator_to_json(const Operator& op) {
  Operator dense = op.tabulated();
  nlohmann::ordered_json j;
  j["name"] = dense.name();
  j["width"] = dense.width().bits();
  j["arity"] = dense.arity();
  j["table"] = std::vector<uint32_t>(dense.table().begin(), dense.table().end());
  return j.dump();
}

void save_operator(const Operator& op, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw usage_error("cannot write operator file '" + path.string() + "'");
  out << operator_to_json(op) << "\n";
  if (!out) throw usage_error("I/O failure writing '" + path.string() + "'");
}

Operator resolve_operator(const std::string& source, std::optional<Width> width) {
  if (width) {
    if (auto b = Operator::by_name(source, *width)) return *b;
  }
  if (std::filesystem::exists(source)) {
    Operator op = load_operator(source);
    if (width && op.width() != *width)
      throw usage_error("operator file '" + source + "' has width " +
                        std::to_string(op.width().bits()) + ", expected " +
                        std::to_string(width->bits()));
    return op;
  }
  if (!width && Operator::by_name(source, Width(8)))
    throw usage_error("builtin operator '" + source + "' needs an explicit width");
  throw usage_error("cannot resolve operator '" + source + "' (not a builtin, not a file)");
}

}  // namespace alusafe
