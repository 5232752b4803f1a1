#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gml/errors.hpp"
#include "gml/formula.hpp"
#include "gml/worldset.hpp"

namespace gml {

// Default ceiling for enumeration-style operations (valuation assignments,
// superset scans, candidate models). The CLI exposes --budget and the
// GMLKIT_BUDGET environment variable on top of this.
inline constexpr std::uint64_t kDefaultBudget = 1ull << 22;

struct Countermodel {
  Valuation valuation;  // the falsifying assignment to the formula's atoms
  int world = 0;
};

struct ValidityVerdict {
  std::optional<Countermodel> countermodel;
  bool valid() const { return !countermodel.has_value(); }
};

// Shared truth-set recursion: only the modal clause differs per semantics.
// DiaFn: WorldSet(std::uint64_t grade, const WorldSet& child_truth).
template <typename DiaFn>
WorldSet truth_set_generic(std::size_t n_worlds, const Valuation& val, const Formula& f,
                           DiaFn&& dia) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (!f.name().empty() && f.name()[0] == '?')
        throw input_error("metavariable in a formula; instantiate the schema first");
      auto it = val.find(f.name());
      return it == val.end() ? WorldSet(n_worlds) : it->second;
    }
    case FormulaKind::Top:
      return WorldSet::full(n_worlds);
    case FormulaKind::Bot:
      return WorldSet(n_worlds);
    case FormulaKind::Neg:
      return truth_set_generic(n_worlds, val, f.child(), dia).complement();
    case FormulaKind::Or:
      return truth_set_generic(n_worlds, val, f.left(), dia) |
             truth_set_generic(n_worlds, val, f.right(), dia);
    case FormulaKind::Dia:
      return dia(f.grade(), truth_set_generic(n_worlds, val, f.child(), dia));
  }
  return WorldSet(n_worlds);
}

// Frame validity by exhaustive valuation enumeration. Each atom of f ranges
// over all subsets of W independently, so there are 2^(|W| * #atoms)
// assignments; the check refuses when that exceeds the budget. Assignments
// are visited in increasing index order (atom j owns bit range
// [j*|W|, (j+1)*|W|)), and the first failing (assignment, world) pair is
// returned, lowest world index first.
//
// Model requirements: m.worlds and truth_set_with(m, f, valuation).
template <typename Model>
ValidityVerdict frame_validity(const Model& m, const Formula& f,
                               std::uint64_t budget = kDefaultBudget) {
  std::vector<std::string> letters = atoms(f);
  if (has_metavariables(f))
    throw input_error("metavariable in a formula; instantiate the schema first");
  const std::size_t n = m.worlds.size();
  const std::size_t bits = n * letters.size();
  if (bits >= 63 || (1ull << bits) > budget)
    throw budget_error("valuation enumeration over " + std::to_string(letters.size()) +
                       " atoms and " + std::to_string(n) + " worlds exceeds the budget");
  const std::uint64_t total = 1ull << bits;
  for (std::uint64_t a = 0; a < total; ++a) {
    Valuation val;
    for (std::size_t j = 0; j < letters.size(); ++j)
      val[letters[j]] = WorldSet::from_bits(n, a >> (j * n));  // from_bits masks to |W|
    WorldSet sat = truth_set_with(m, f, val);
    for (std::size_t w = 0; w < n; ++w)
      if (!sat.test(w))
        return ValidityVerdict{Countermodel{std::move(val), static_cast<int>(w)}};
  }
  return ValidityVerdict{};
}

}  // namespace gml
