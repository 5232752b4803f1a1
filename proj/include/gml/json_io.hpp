#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gml/bisim.hpp"
#include "gml/graded.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/worldset.hpp"

namespace gml {

using json = nlohmann::json;

// Model documents carry a "type" tag: kripke, graded, nbhd, nbhd-core.
using AnyModel = std::variant<KripkeModel, GradedModel, NeighbourhoodModel, CoreModel>;

// Parsers validate shape strictly: unknown keys, missing keys, wrong value
// types, unknown world names and duplicate entries are all input errors.
KripkeModel kripke_from_json(const json& j);
GradedModel graded_from_json(const json& j);
NeighbourhoodModel nbhd_from_json(const json& j);
CoreModel core_from_json(const json& j);
AnyModel model_from_json(const json& j);

json to_json(const KripkeModel& m);
json to_json(const GradedModel& m);
json to_json(const NeighbourhoodModel& m);
json to_json(const CoreModel& m);
json to_json(const AnyModel& m);

// Side inputs resolved against already-loaded models.
BisimRelation relation_from_json(const json& j, const std::vector<std::string>& left_worlds,
                                 const std::vector<std::string>& right_worlds);
TupleBisim tuple_from_json(const json& j, const std::vector<std::string>& left_worlds,
                           const std::vector<std::string>& right_worlds);
WorldMap map_from_json(const json& j, const std::vector<std::string>& src_worlds,
                       const std::vector<std::string>& dst_worlds);

json relation_to_json(const BisimRelation& z, const std::vector<std::string>& left_worlds,
                      const std::vector<std::string>& right_worlds);
json tuple_to_json(const TupleBisim& t, const std::vector<std::string>& left_worlds,
                   const std::vector<std::string>& right_worlds);

// File loading with parse failures reported as input errors.
json load_json_file(const std::string& path);
AnyModel load_model_file(const std::string& path);

// Member names of a set, ascending; the one emission helper everything uses.
json names_of(const WorldSet& x, const std::vector<std::string>& worlds);

// Canonical text form: two-space indent, sorted keys, trailing newline.
// Equal documents serialize to equal bytes.
std::string canonical_dump(const json& j);

}  // namespace gml
