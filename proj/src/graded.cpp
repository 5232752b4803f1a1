#include "gml/graded.hpp"

#include <algorithm>
#include <tuple>

#include "gml/worlds.hpp"

namespace gml {

GradedModel make_graded(
    std::vector<std::string> worlds,
    const std::vector<std::tuple<std::string, std::string, ExtNat>>& entries,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& val) {
  GradedModel m;
  m.worlds = canonical_worlds(std::move(worlds));
  m.sigma.assign(m.worlds.size(), {});
  for (const auto& [from, to, mult] : entries) {
    int w = require_world(m.worlds, from);
    int u = require_world(m.worlds, to);
    auto& row = m.sigma[static_cast<std::size_t>(w)];
    for (const auto& [target, _] : row)
      if (target == u) throw input_error("duplicate sigma entry for (" + from + ", " + to + ")");
    if (mult == ExtNat(0)) continue;  // zero entries are normalized away
    row.emplace_back(u, mult);
  }
  for (auto& row : m.sigma)
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [letter, names] : val) {
    WorldSet s(m.worlds.size());
    for (const auto& name : names) s.set(static_cast<std::size_t>(require_world(m.worlds, name)));
    if (!m.val.emplace(letter, std::move(s)).second)
      throw input_error("duplicate valuation entry for \"" + letter + "\"");
  }
  return m;
}

ExtNat sigma_mass(const GradedModel& m, int w, const WorldSet& x) {
  ExtNat total(0);
  for (const auto& [target, mult] : m.sigma[static_cast<std::size_t>(w)])
    if (x.test(static_cast<std::size_t>(target))) total = total + mult;
  return total;
}

WorldSet truth_set_with(const GradedModel& m, const Formula& f, const Valuation& val) {
  const std::size_t n = m.worlds.size();
  return truth_set_generic(n, val, f, [&](std::uint64_t grade, const WorldSet& sat) {
    WorldSet out(n);
    for (std::size_t w = 0; w < n; ++w)
      if (sigma_mass(m, static_cast<int>(w), sat).at_least(grade)) out.set(w);
    return out;
  });
}

WorldSet truth_set(const GradedModel& m, const Formula& f) {
  return truth_set_with(m, f, m.val);
}

bool eval(const GradedModel& m, const std::string& world, const Formula& f) {
  int w = require_world(m.worlds, world);
  return truth_set(m, f).test(static_cast<std::size_t>(w));
}

GradedModel kripke_to_graded(const KripkeModel& m) {
  GradedModel g;
  g.worlds = m.worlds;
  g.sigma.assign(m.worlds.size(), {});
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    for (int u : m.rel[w].members()) g.sigma[w].emplace_back(u, ExtNat(1));
  g.val = m.val;
  return g;
}

KripkeModel graded_to_kripke(const GradedModel& m, std::uint64_t cap) {
  const std::size_t n = m.worlds.size();
  const std::size_t copies = static_cast<std::size_t>(cap) + 1;
  if (n > 0 && copies > (1ull << 20) / n)
    throw budget_error("copy unfolding too large for cap " + std::to_string(cap));
  KripkeModel k;
  std::vector<std::string> names;
  names.reserve(n * copies);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t i = 0; i < copies; ++i)
      names.push_back(m.worlds[w] + "#" + std::to_string(i));
  k.worlds = canonical_worlds(std::move(names));
  k.rel.assign(k.worlds.size(), WorldSet(k.worlds.size()));
  auto copy_index = [&](std::size_t w, std::size_t i) {
    return static_cast<std::size_t>(
        require_world(k.worlds, m.worlds[w] + "#" + std::to_string(i)));
  };
  for (std::size_t w = 0; w < n; ++w) {
    WorldSet succ(k.worlds.size());
    for (const auto& [target, mult] : m.sigma[w]) {
      std::uint64_t top = mult.is_omega() ? cap : std::min<std::uint64_t>(mult.value(), cap);
      for (std::uint64_t j = 1; j <= top; ++j)
        succ.set(copy_index(static_cast<std::size_t>(target), j));
    }
    for (std::size_t i = 0; i < copies; ++i)
      k.rel[copy_index(w, i)] = succ;
  }
  for (const auto& [letter, s] : m.val) {
    WorldSet lifted(k.worlds.size());
    for (int w : s.members())
      for (std::size_t i = 0; i < copies; ++i)
        lifted.set(copy_index(static_cast<std::size_t>(w), i));
    k.val.emplace(letter, std::move(lifted));
  }
  return k;
}

}  // namespace gml
