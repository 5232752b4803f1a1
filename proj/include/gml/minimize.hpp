#pragma once

#include <cstddef>
#include <utility>

#include "gml/formula.hpp"
#include "gml/graded.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"

namespace gml {

// Shrinkers for failing fuzz cases. remove_world(m, w) deletes one world and
// reindexes everything that mentions it: edges and multiplicities to w are
// dropped, neighbourhood sets containing w are dropped, cores and valuations
// lose the member. Removing the last world is an error.
KripkeModel remove_world(const KripkeModel& m, int w);
GradedModel remove_world(const GradedModel& m, int w);
NeighbourhoodModel remove_world(const NeighbourhoodModel& m, int w);
CoreModel remove_world(const CoreModel& m, int w);

// Drop worlds one at a time, lowest index first, as long as the predicate
// still reports failure. The result still fails and has no removable world.
template <typename Model, typename Pred>
Model greedy_remove_worlds(Model m, Pred&& still_fails) {
  bool progress = true;
  while (progress && m.worlds.size() > 1) {
    progress = false;
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
      Model candidate = remove_world(m, static_cast<int>(w));
      if (still_fails(candidate)) {
        m = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return m;
}

// Dia-node surgery, preorder indexed: count them, read one grade, or build
// a copy with one grade replaced. counter must start at 0.
std::size_t count_dias(const Formula& f);
std::uint64_t dia_grade_at(const Formula& f, std::size_t index, std::size_t& counter);
Formula with_dia_grade(const Formula& f, std::size_t index, std::uint64_t grade);

// Lower every dia grade as far as the predicate allows: jump to zero when
// that still fails, otherwise walk down one unit at a time.
template <typename Pred>
Formula greedy_reduce_grades(Formula f, Pred&& still_fails) {
  const std::size_t n = count_dias(f);
  for (std::size_t i = 0; i < n; ++i) {
    Formula trial = with_dia_grade(f, i, 0);
    if (still_fails(trial)) {
      f = trial;
      continue;
    }
    for (;;) {
      std::size_t seen = 0;
      const std::uint64_t grade = dia_grade_at(f, i, seen);
      if (grade == 0) break;
      trial = with_dia_grade(f, i, grade - 1);
      if (!still_fails(trial)) break;
      f = trial;
    }
  }
  return f;
}

}  // namespace gml
