#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gml/formula.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/worldset.hpp"

namespace gml {

// Relation between the worlds of a left and a right model, kept sorted and
// duplicate-free as index pairs.
struct BisimRelation {
  std::vector<std::pair<int, int>> pairs;
};

BisimRelation make_relation(const std::vector<std::pair<std::string, std::string>>& pairs,
                            const std::vector<std::string>& left_worlds,
                            const std::vector<std::string>& right_worlds);

struct BisimViolation {
  enum Clause { Prop, Forth, Back };
  Clause clause;
  std::pair<int, int> at;   // the related pair where the clause fails
  std::uint64_t grade = 0;  // 0 for Prop
  WorldSet witness;         // failing subset (left universe for Forth, right for Back)
  std::string letter;       // Prop only
};
using BisimVerdict = std::optional<BisimViolation>;

// Graded bisimulation between relational models, minimal-witness form: for
// every related (w,w') and every n up to the larger out-degree, each
// n-subset X of R[w] needs an n-subset of R'[w'] whose elements are all
// Z-related from X; symmetrically for Back. Such a subset exists iff
// |Z[X] intersect R'[w']| >= n, which is how the witness search is decided.
// Tests check this against the literal quantification over full up-closures.
// Empty relations are an error; out-degrees above the witness budget refuse.
BisimVerdict check_graded_bisim(const BisimRelation& z, const KripkeModel& left,
                                const KripkeModel& right, std::size_t witness_budget = 10);

// Monotonic bisimulation between neighbourhood models: letter agreement
// plus, per grade, every member of nu_n(w) admits a member of nu'_n(w')
// covered by its Z-image (and symmetrically). Explicit collections are
// checked literally; implicit frames reduce to their minimal members, the
// n-element subsets of the cores.
BisimVerdict check_monotonic_bisim(const BisimRelation& z, const NbhdFrame& left,
                                   const NbhdFrame& right,
                                   std::uint64_t budget = kDefaultBudget);

// Greatest graded bisimulation: start from all letter-agreeing pairs and
// delete failing pairs in rounds (simultaneous deletion per round) until
// stable. May legitimately return an empty relation.
BisimRelation largest_graded_bisim(const KripkeModel& left, const KripkeModel& right,
                                   std::size_t witness_budget = 10);

// Size-indexed family Z_1, Z_2, ..., Z_K relating equal-size world sets.
struct TupleBisim {
  std::vector<std::vector<std::pair<WorldSet, WorldSet>>> family;  // family[i] = Z_{i+1}
};

TupleBisim make_tuple_bisim(
    const std::vector<std::pair<std::uint64_t,
                                std::vector<std::pair<std::vector<std::string>,
                                                      std::vector<std::string>>>>>& entries,
    const std::vector<std::string>& left_worlds, const std::vector<std::string>& right_worlds);

// Clause-by-clause check of the tuple presentation:
//   (1) Z_1 is non-empty
//   (2) members are finite subsets of the two world sets (structural)
//   (3) pairs in Z_i have both components of size i
//   (4) singleton pairs in Z_1 agree on proposition letters
//   (5) for {w} Z_1 {w'}: every i-subset of R[w] is Z_i-related to some
//       subset of R'[w']
//   (6) symmetrically for i-subsets of R'[w']
//   (7) pairs in Z_i are Z_1-pairs: elementwise related in both directions
struct TupleViolation {
  int item;                         // 1..7
  std::uint64_t grade = 0;          // family index i involved (0 when n/a)
  WorldSet left, right;             // offending pair (or singletons, items 4-6)
  std::optional<WorldSet> witness;  // offending successor subset (items 5/6)
  std::string letter;               // item 4
};
using TupleVerdict = std::optional<TupleViolation>;
TupleVerdict check_tuple_bisim(const TupleBisim& t, const KripkeModel& left,
                               const KripkeModel& right);

// Project Z_1 down to a world relation.
BisimRelation tuple_to_graded(const TupleBisim& t);

// Expand a world relation into the size-indexed family: Z_1 relates the
// singletons of Z; Z_i (2 <= i <= bound) relates every pair of equal-size
// sets that are elementwise Z-related in both directions. The bound defaults
// to the larger maximal out-degree (at least 1), which is all the checking
// clauses can ever demand.
TupleBisim graded_to_tuple(const BisimRelation& z, const KripkeModel& left,
                           const KripkeModel& right,
                           std::optional<std::uint64_t> size_bound = {},
                           std::uint64_t budget = kDefaultBudget);

// Sample random formulas at two pointed models until one tells them apart.
struct EquivSample {
  std::optional<Formula> distinguishing;
  std::uint64_t trials_used = 0;
};
EquivSample equiv_sample(const KripkeModel& left, const std::string& left_world,
                         const KripkeModel& right, const std::string& right_world,
                         std::uint64_t trials, unsigned depth, std::uint64_t grade_bound,
                         std::uint64_t seed);

}  // namespace gml
