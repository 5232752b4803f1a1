#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gml/formula.hpp"
#include "gml/kripke.hpp"
#include "gml/validity.hpp"
#include "gml/worldset.hpp"

namespace gml {

// Explicit neighbourhood model. Stores nu_n(w) for n = 1..max_grade as
// canonical (sorted, duplicate-free) collections plus an optional per-world
// override for nu_0. The represented frame is indexed by every natural
// grade: nu_0(w) is the full powerset unless overridden, and nu_n(w) is
// empty for every n > max_grade. Frame checks quantify over that full
// family; formula evaluation refuses grades above max_grade rather than
// answering from the convention. Capped at 16 worlds.
struct NeighbourhoodModel {
  std::vector<std::string> worlds;                         // sorted, duplicate-free
  std::uint64_t max_grade = 0;                             // N
  std::vector<std::vector<std::vector<WorldSet>>> nu;      // nu[w][n-1], n = 1..N
  std::vector<std::optional<std::vector<WorldSet>>> nu0;   // per-world override
  Valuation val;
};

// Implicit graded neighbourhood frame: nu_n(w) = up-closure of the n-element
// subsets of core(w), for every natural n. Scales to large world counts and
// answers any grade.
struct CoreModel {
  std::vector<std::string> worlds;  // sorted, duplicate-free
  std::vector<WorldSet> core;
  Valuation val;
};

struct NuEntry {
  std::string world;
  std::uint64_t grade;
  std::vector<std::vector<std::string>> sets;
};

NeighbourhoodModel make_neighbourhood(
    std::vector<std::string> worlds, std::uint64_t max_grade, const std::vector<NuEntry>& nu,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& nu0,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& val);

CoreModel make_core(std::vector<std::string> worlds,
                    const std::vector<std::pair<std::string, std::vector<std::string>>>& core,
                    const std::vector<std::pair<std::string, std::vector<std::string>>>& val);

// Membership shortcut for implicit frames: X lies in the up-closure of the
// n-element subsets of core iff |X intersect core| >= n.
inline bool up_set_member(const WorldSet& core, std::uint64_t n, const WorldSet& x) {
  return x.intersect_count(core) >= n;
}

// Convention-aware membership in nu_n(w) of an explicit model (any grade).
bool nu_member(const NeighbourhoodModel& m, int w, std::uint64_t grade, const WorldSet& x);

// Truth sets / evaluation. dia_n psi holds at w iff the truth set of psi is
// a member of nu_n(w). Explicit models throw grade_error when the formula
// mentions a grade above max_grade.
WorldSet truth_set(const NeighbourhoodModel& m, const Formula& f);
WorldSet truth_set_with(const NeighbourhoodModel& m, const Formula& f, const Valuation& val);
bool eval(const NeighbourhoodModel& m, const std::string& world, const Formula& f);

WorldSet truth_set(const CoreModel& m, const Formula& f);
WorldSet truth_set_with(const CoreModel& m, const Formula& f, const Valuation& val);
bool eval(const CoreModel& m, const std::string& world, const Formula& f);

// Monotonicity: every nu_n(w) closed under supersets (checked grades: the
// nu_0 override if present, and 1..N). Implicit frames are monotone by
// construction and report no violation.
struct MonoViolation {
  int world;
  std::uint64_t grade;
  WorldSet member;    // X in nu_n(w)
  WorldSet superset;  // Y containing X with Y not in nu_n(w)
};
std::optional<MonoViolation> is_monotonic(const NeighbourhoodModel& m,
                                          std::uint64_t budget = kDefaultBudget);
std::optional<MonoViolation> is_monotonic(const CoreModel& m);

// Relational <-> neighbourhood translations; the valuation carries over.
CoreModel bullet(const KripkeModel& m);     // core(w) = successor set of w
KripkeModel unbullet(const CoreModel& m);   // successor set of w = core(w)

// Expand an implicit frame into the explicit representation with the given
// grade bound (default: the largest core size). Capped at 16 worlds.
NeighbourhoodModel materialize(const CoreModel& m, std::optional<std::uint64_t> grade_bound = {});

// Worlds whose singletons lie in nu_1(w): the candidate core (the maximum
// atomic set when the frame is graded).
WorldSet extract_core(const NeighbourhoodModel& m, int w);

// Is the explicit model pointwise the up-closure family of some core? Per
// world, with A = extract_core(w): nu_0 must be the full powerset, the
// stored nu_n must equal { X : |X intersect A| >= n } for n = 1..N, and
// |A| <= N so that the empty collections beyond N are consistent (the
// violation for |A| > N is reported at grade N+1).
struct GradedFrameViolation {
  int world;
  std::uint64_t grade;
  WorldSet witness;  // set on which the two families disagree
};
struct GradedFrameVerdict {
  std::optional<GradedFrameViolation> violation;
  std::vector<WorldSet> core;  // per world; meaningful when graded
  bool graded() const { return !violation.has_value(); }
};
GradedFrameVerdict is_graded_frame(const NeighbourhoodModel& m,
                                   std::uint64_t budget = kDefaultBudget);
GradedFrameVerdict is_graded_frame(const CoreModel& m);

// First-order frame conditions equivalent to gradedness, checked literally:
//   *1 nu_0(w) is the full powerset
//   *2 each nu_n(w) is closed under supersets
//   *3 the empty set is in no nu_n(w) for n >= 1
//   *4 below every member of nu_n(w) lies a minimal member
//   *5 minimal members of nu_n(w) have exactly n elements, all atomic in nu_1(w)
//   *6 every union of n distinct nu_1-singletons is a minimal member of nu_n(w)
// Grades run 1..N for *2..*5; *6 additionally covers n up to the singleton
// count (memberships beyond N read as empty), which is what makes the report
// agree with is_graded_frame on every frame.
struct StarViolation {
  int world;
  std::uint64_t grade;
  std::vector<WorldSet> sets;  // condition-specific witnesses
};
struct StarReport {
  std::array<std::optional<StarViolation>, 6> violation;  // [k] = condition *k+1
  bool all_pass() const {
    for (const auto& v : violation)
      if (v) return false;
    return true;
  }
};
StarReport check_stars(const NeighbourhoodModel& m, std::uint64_t budget = kDefaultBudget);

// Correspondence properties of the two modal axioms with genuinely
// first-order content, quantified literally over worlds, subsets, grades:
//   ax5: X \ Y not in nu_1(w) and X in nu_n(w)  implies  Y in nu_n(w)
//   ax6: X,Y disjoint in nu_1(w)-measure with exact grades m,n implies
//        X union Y has exact grade m+n
struct PropertyViolation {
  int world;
  std::uint64_t grade_m, grade_n;
  WorldSet x, y;
};
std::optional<PropertyViolation> check_ax5_property(const NeighbourhoodModel& m,
                                                    std::uint64_t budget = kDefaultBudget);
std::optional<PropertyViolation> check_ax6_property(const NeighbourhoodModel& m,
                                                    std::uint64_t budget = kDefaultBudget);

// Total function between the world sets of two frames.
struct WorldMap {
  std::vector<int> to;  // index into dst worlds, one entry per src world
};
WorldMap make_world_map(const std::vector<std::pair<std::string, std::string>>& pairs,
                        const std::vector<std::string>& src_worlds,
                        const std::vector<std::string>& dst_worlds);

// Either representation of a neighbourhood frame.
using NbhdFrame = std::variant<NeighbourhoodModel, CoreModel>;

// Bounded-morphism check, at every grade up to the larger represented bound
// (memberships beyond a model's own bound read as empty):
//   BM1: X in nu_n(w)        implies  f[X] in nu'_n(f(w))
//   BM2: X' in nu'_n(f(w))   implies  some X in nu_n(w) with f[X] inside X'
// Surjectivity is reported alongside, not required.
struct MorphismViolation {
  int clause;  // 1 = BM1, 2 = BM2
  int world;   // source world w
  std::uint64_t grade;
  WorldSet witness;  // X (BM1) or X' (BM2)
};
struct MorphismVerdict {
  std::optional<MorphismViolation> violation;
  bool surjective = false;
  bool ok() const { return !violation.has_value(); }
};
MorphismVerdict is_bounded_morphism(const WorldMap& f, const NbhdFrame& src,
                                    const NbhdFrame& dst, std::uint64_t budget = kDefaultBudget);

// Randomized-plus-exhaustive search for a model of the given class that
// falsifies f somewhere. Monotonic candidates are random up-closed explicit
// models; GradedCore candidates are random implicit frames. Deterministic
// per seed; the budget counts candidate models.
enum class FrameClass { Monotonic, GradedCore };
struct SearchHit {
  std::variant<NeighbourhoodModel, CoreModel> model;
  int world;
  std::uint64_t candidate;  // index of the hit in enumeration order
};
std::optional<SearchHit> counterexample_search(const Formula& f, std::size_t max_worlds,
                                               std::uint64_t budget, std::uint64_t seed,
                                               FrameClass cls = FrameClass::Monotonic);

}  // namespace gml
