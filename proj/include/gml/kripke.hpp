#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gml/formula.hpp"
#include "gml/validity.hpp"
#include "gml/worldset.hpp"

namespace gml {

// Pointed relational model. A frame is a model with an empty valuation;
// validity checks ignore the stored valuation either way.
struct KripkeModel {
  std::vector<std::string> worlds;  // sorted, duplicate-free
  std::vector<WorldSet> rel;        // rel[w] = successor set of world w
  Valuation val;
};

// Validates and canonicalizes: sorts worlds, resolves names to indices.
KripkeModel make_kripke(std::vector<std::string> worlds,
                        const std::vector<std::pair<std::string, std::string>>& edges,
                        const std::vector<std::pair<std::string, std::vector<std::string>>>& val);

// Truth set of f under the model's own valuation / an explicit valuation.
// dia_n psi holds at w iff at least n successors of w satisfy psi.
WorldSet truth_set(const KripkeModel& m, const Formula& f);
WorldSet truth_set_with(const KripkeModel& m, const Formula& f, const Valuation& val);

// Truth at a named world; unknown worlds are an error, unknown atoms are
// false everywhere.
bool eval(const KripkeModel& m, const std::string& world, const Formula& f);

}  // namespace gml
