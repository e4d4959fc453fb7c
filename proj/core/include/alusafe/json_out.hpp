#pragma once

#include <json.hpp>

#include "alusafe/closure.hpp"
#include "alusafe/constant_search.hpp"
#include "alusafe/counting.hpp"
#include "alusafe/safety.hpp"
#include "alusafe/witness.hpp"

namespace alusafe {

// Stable, documented JSON shapes; field order is fixed so identical inputs
// produce byte-identical output.
using json = nlohmann::ordered_json;

json to_json(const SafetyReport& r);
json to_json(const Witness& w);
json to_json(const ConstantFinding& f);
json to_json(const SearchResult& r);
json to_json(const ClosureResult& r);
json to_json(const CountResult& r);

}  // namespace alusafe
