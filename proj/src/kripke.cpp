#include "gml/kripke.hpp"

#include "gml/worlds.hpp"

namespace gml {

KripkeModel make_kripke(std::vector<std::string> worlds,
                        const std::vector<std::pair<std::string, std::string>>& edges,
                        const std::vector<std::pair<std::string, std::vector<std::string>>>& val) {
  KripkeModel m;
  m.worlds = canonical_worlds(std::move(worlds));
  m.rel.assign(m.worlds.size(), WorldSet(m.worlds.size()));
  for (const auto& [from, to] : edges)
    m.rel[static_cast<std::size_t>(require_world(m.worlds, from))].set(
        static_cast<std::size_t>(require_world(m.worlds, to)));
  for (const auto& [letter, names] : val) {
    WorldSet s(m.worlds.size());
    for (const auto& name : names) s.set(static_cast<std::size_t>(require_world(m.worlds, name)));
    if (!m.val.emplace(letter, std::move(s)).second)
      throw input_error("duplicate valuation entry for \"" + letter + "\"");
  }
  return m;
}

WorldSet truth_set_with(const KripkeModel& m, const Formula& f, const Valuation& val) {
  const std::size_t n = m.worlds.size();
  return truth_set_generic(n, val, f, [&](std::uint64_t grade, const WorldSet& sat) {
    WorldSet out(n);
    for (std::size_t w = 0; w < n; ++w)
      if (m.rel[w].intersect_count(sat) >= grade) out.set(w);
    return out;
  });
}

WorldSet truth_set(const KripkeModel& m, const Formula& f) {
  return truth_set_with(m, f, m.val);
}

bool eval(const KripkeModel& m, const std::string& world, const Formula& f) {
  int w = require_world(m.worlds, world);
  return truth_set(m, f).test(static_cast<std::size_t>(w));
}

}  // namespace gml
