#pragma once

#include <filesystem>
#include <string>

#include "alusafe/operator.hpp"

namespace alusafe {

// Operator file format: a JSON object
//   {"name": string, "width": int, "arity": int, "table": [int, ...]}
// with the row-major indexing documented on Operator::dense.

Operator load_operator(const std::filesystem::path& path);
Operator parse_operator_json(const std::string& text);  // parse_error / usage_error

void save_operator(const Operator& op, const std::filesystem::path& path);
std::string operator_to_json(const Operator& op);  // tabulates rule-backed operators

// Resolve an operator source: a builtin name, or a path to an operator file.
// `width` is required for builtins and cross-checked against files when given.
Operator resolve_operator(const std::string& source, std::optional<Width> width);

}  // namespace alusafe
