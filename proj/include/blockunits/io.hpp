#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "blockunits/decider.hpp"

namespace blockunits::io {

using nlohmann::json;

json to_json(const cyclo::CycNumber& x);
cyclo::CycNumber cyc_from_json(const json& j);

json to_json(const grouprep::CharacterTable& t);
grouprep::CharacterTable table_from_json(const json& j);

json to_json(const grouprep::UnitCandidate& u);
grouprep::UnitCandidate unit_from_json(const json& j);

json to_json(const brauer::BrauerTree& t);
brauer::BrauerTree tree_from_json(const json& j);

json to_json(const decider::Verdict& v);

Partition partition_from_json(const json& j);
// comma-separated CLI form, e.g. "3,2"; must be weakly decreasing
Partition parse_partition(const std::string& s);

// An instance bundle references a table, a tree, a unit candidate and the
// skew-field assertion. References are file paths (relative to the bundle),
// inline objects, or generator references:
//   "table": {"psl2": {"q": 16}}
//   "tree":  {"psl2": {"q": 16, "t": 5, "block": "principal"}}
//            ... "block": "nonprincipal:<index>"
struct Bundle {
  grouprep::CharacterTable table;
  brauer::BrauerTree tree;
  grouprep::UnitCandidate unit;
  bool skewfield_free = true;
};

Bundle load_bundle(const std::filesystem::path& path);

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);

}  // namespace blockunits::io
