#include "gml/minimize.hpp"

#include "gml/errors.hpp"

namespace gml {
namespace {

// Reindex after deleting world w; bit w must be clear unless members may
// simply vanish (cores, valuations).
WorldSet drop_bit(const WorldSet& x, int w) {
  WorldSet out(x.universe() - 1);
  for (int m : x.members())
    if (m != w) out.set(m < w ? m : m - 1);
  return out;
}

std::vector<std::string> drop_name(const std::vector<std::string>& worlds, int w) {
  if (worlds.size() <= 1) throw input_error("cannot remove the last world");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (static_cast<int>(i) != w) out.push_back(worlds[i]);
  return out;
}

Valuation drop_val(const Valuation& val, int w) {
  Valuation out;
  for (const auto& [letter, set] : val) out.emplace(letter, drop_bit(set, w));
  return out;
}

}  // namespace

KripkeModel remove_world(const KripkeModel& m, int w) {
  KripkeModel out;
  out.worlds = drop_name(m.worlds, w);
  for (std::size_t v = 0; v < m.worlds.size(); ++v)
    if (static_cast<int>(v) != w) out.rel.push_back(drop_bit(m.rel[v], w));
  out.val = drop_val(m.val, w);
  return out;
}

GradedModel remove_world(const GradedModel& m, int w) {
  GradedModel out;
  out.worlds = drop_name(m.worlds, w);
  for (std::size_t v = 0; v < m.worlds.size(); ++v) {
    if (static_cast<int>(v) == w) continue;
    std::vector<std::pair<int, ExtNat>> row;
    for (const auto& [u, mult] : m.sigma[v])
      if (u != w) row.emplace_back(u < w ? u : u - 1, mult);
    out.sigma.push_back(std::move(row));
  }
  out.val = drop_val(m.val, w);
  return out;
}

NeighbourhoodModel remove_world(const NeighbourhoodModel& m, int w) {
  NeighbourhoodModel out;
  out.worlds = drop_name(m.worlds, w);
  out.max_grade = m.max_grade;
  for (std::size_t v = 0; v < m.worlds.size(); ++v) {
    if (static_cast<int>(v) == w) continue;
    std::vector<std::vector<WorldSet>> grades;
    for (const auto& coll : m.nu[v]) {
      std::vector<WorldSet> kept;
      for (const WorldSet& x : coll)
        if (!x.test(w)) kept.push_back(drop_bit(x, w));
      grades.push_back(std::move(kept));  // order survives: the dropped bit was clear
    }
    out.nu.push_back(std::move(grades));
    if (m.nu0[v]) {
      std::vector<WorldSet> kept;
      for (const WorldSet& x : *m.nu0[v])
        if (!x.test(w)) kept.push_back(drop_bit(x, w));
      out.nu0.push_back(std::move(kept));
    } else {
      out.nu0.push_back(std::nullopt);
    }
  }
  out.val = drop_val(m.val, w);
  return out;
}

CoreModel remove_world(const CoreModel& m, int w) {
  CoreModel out;
  out.worlds = drop_name(m.worlds, w);
  for (std::size_t v = 0; v < m.worlds.size(); ++v)
    if (static_cast<int>(v) != w) out.core.push_back(drop_bit(m.core[v], w));
  out.val = drop_val(m.val, w);
  return out;
}

std::size_t count_dias(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Neg:
      return count_dias(f.child());
    case FormulaKind::Dia:
      return 1 + count_dias(f.child());
    case FormulaKind::Or:
      return count_dias(f.left()) + count_dias(f.right());
  }
  return 0;
}

std::uint64_t dia_grade_at(const Formula& f, std::size_t index, std::size_t& counter) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      throw input_error("dia index out of range");
    case FormulaKind::Neg:
      return dia_grade_at(f.child(), index, counter);
    case FormulaKind::Dia:
      if (counter++ == index) return f.grade();
      return dia_grade_at(f.child(), index, counter);
    case FormulaKind::Or: {
      const std::size_t in_left = count_dias(f.left());
      if (counter + in_left > index) return dia_grade_at(f.left(), index, counter);
      counter += in_left;
      return dia_grade_at(f.right(), index, counter);
    }
  }
  throw input_error("dia index out of range");
}

namespace {

Formula rebuild_with_grade(const Formula& f, std::size_t index, std::uint64_t grade,
                           std::size_t& counter) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(rebuild_with_grade(f.child(), index, grade, counter));
    case FormulaKind::Dia: {
      const std::uint64_t g = counter++ == index ? grade : f.grade();
      return Formula::dia(g, rebuild_with_grade(f.child(), index, grade, counter));
    }
    case FormulaKind::Or: {
      Formula a = rebuild_with_grade(f.left(), index, grade, counter);
      return Formula::disj(a, rebuild_with_grade(f.right(), index, grade, counter));
    }
  }
  return f;
}

}  // namespace

Formula with_dia_grade(const Formula& f, std::size_t index, std::uint64_t grade) {
  if (index >= count_dias(f)) throw input_error("dia index out of range");
  std::size_t counter = 0;
  return rebuild_with_grade(f, index, grade, counter);
}

}  // namespace gml
