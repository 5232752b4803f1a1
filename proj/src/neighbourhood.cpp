#include "gml/neighbourhood.hpp"

#include <algorithm>

#include "gml/rng.hpp"
#include "gml/subsets.hpp"
#include "gml/worlds.hpp"

namespace gml {

namespace {

constexpr std::size_t kExplicitWorldCap = 16;

// Budget meter for the enumeration-heavy checks.
struct Steps {
  std::uint64_t left;
  void spend(std::uint64_t k) {
    if (k > left) throw budget_error("neighbourhood enumeration exceeds the budget");
    left -= k;
  }
};

bool collection_member(const std::vector<WorldSet>& coll, const WorldSet& x) {
  return std::binary_search(coll.begin(), coll.end(), x);
}

std::vector<WorldSet> canonical_collection(std::vector<WorldSet> sets, const char* what) {
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end())
    throw input_error(std::string("duplicate set in ") + what);
  return sets;
}

WorldSet set_from_names(const std::vector<std::string>& worlds,
                        const std::vector<std::string>& names) {
  WorldSet s(worlds.size());
  for (const auto& n : names) {
    std::size_t i = static_cast<std::size_t>(require_world(worlds, n));
    if (s.test(i)) throw input_error("duplicate world \"" + n + "\" in a set");
    s.set(i);
  }
  return s;
}

Valuation valuation_from_names(
    const std::vector<std::string>& worlds,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& val) {
  Valuation out;
  for (const auto& [letter, names] : val) {
    WorldSet s(worlds.size());
    for (const auto& n : names) s.set(static_cast<std::size_t>(require_world(worlds, n)));
    if (!out.emplace(letter, std::move(s)).second)
      throw input_error("duplicate valuation entry for \"" + letter + "\"");
  }
  return out;
}

// Ascending enumeration of all subsets of a universe of size n (n <= 16).
template <typename Fn>
void for_each_subset(std::size_t n, Fn&& fn) {
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
    fn(WorldSet::from_bits(n, mask));
}

}  // namespace

NeighbourhoodModel make_neighbourhood(
    std::vector<std::string> worlds, std::uint64_t max_grade, const std::vector<NuEntry>& nu,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& nu0,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& val) {
  NeighbourhoodModel m;
  m.worlds = canonical_worlds(std::move(worlds));
  if (m.worlds.size() > kExplicitWorldCap)
    throw input_error("explicit neighbourhood models are capped at 16 worlds");
  if (max_grade > 64) throw input_error("max_grade above 64 is not representable explicitly");
  m.max_grade = max_grade;
  m.nu.assign(m.worlds.size(), std::vector<std::vector<WorldSet>>(max_grade));
  m.nu0.assign(m.worlds.size(), std::nullopt);
  std::vector<std::vector<bool>> seen(m.worlds.size(), std::vector<bool>(max_grade, false));
  for (const auto& entry : nu) {
    std::size_t w = static_cast<std::size_t>(require_world(m.worlds, entry.world));
    if (entry.grade < 1 || entry.grade > max_grade)
      throw input_error("nu grade " + std::to_string(entry.grade) +
                        " outside 1..max_grade (grade 0 goes in nu0)");
    if (seen[w][entry.grade - 1])
      throw input_error("duplicate nu entry for (" + entry.world + ", " +
                        std::to_string(entry.grade) + ")");
    seen[w][entry.grade - 1] = true;
    std::vector<WorldSet> coll;
    for (const auto& names : entry.sets) coll.push_back(set_from_names(m.worlds, names));
    m.nu[w][entry.grade - 1] = canonical_collection(std::move(coll), "a nu collection");
  }
  for (const auto& [world, sets] : nu0) {
    std::size_t w = static_cast<std::size_t>(require_world(m.worlds, world));
    if (m.nu0[w]) throw input_error("duplicate nu0 entry for " + world);
    std::vector<WorldSet> coll;
    for (const auto& names : sets) coll.push_back(set_from_names(m.worlds, names));
    m.nu0[w] = canonical_collection(std::move(coll), "a nu0 collection");
  }
  m.val = valuation_from_names(m.worlds, val);
  return m;
}

CoreModel make_core(std::vector<std::string> worlds,
                    const std::vector<std::pair<std::string, std::vector<std::string>>>& core,
                    const std::vector<std::pair<std::string, std::vector<std::string>>>& val) {
  CoreModel m;
  m.worlds = canonical_worlds(std::move(worlds));
  m.core.assign(m.worlds.size(), WorldSet(m.worlds.size()));
  std::vector<bool> seen(m.worlds.size(), false);
  for (const auto& [world, names] : core) {
    std::size_t w = static_cast<std::size_t>(require_world(m.worlds, world));
    if (seen[w]) throw input_error("duplicate core entry for " + world);
    seen[w] = true;
    m.core[w] = set_from_names(m.worlds, names);
  }
  m.val = valuation_from_names(m.worlds, val);
  return m;
}

bool nu_member(const NeighbourhoodModel& m, int w, std::uint64_t grade, const WorldSet& x) {
  std::size_t wi = static_cast<std::size_t>(w);
  if (grade == 0) return m.nu0[wi] ? collection_member(*m.nu0[wi], x) : true;
  if (grade > m.max_grade) return false;
  return collection_member(m.nu[wi][grade - 1], x);
}

WorldSet truth_set_with(const NeighbourhoodModel& m, const Formula& f, const Valuation& val) {
  const std::size_t n = m.worlds.size();
  return truth_set_generic(n, val, f, [&](std::uint64_t grade, const WorldSet& sat) {
    if (grade > m.max_grade)
      throw grade_error("grade " + std::to_string(grade) +
                        " exceeds the explicit bound " + std::to_string(m.max_grade));
    WorldSet out(n);
    for (std::size_t w = 0; w < n; ++w)
      if (nu_member(m, static_cast<int>(w), grade, sat)) out.set(w);
    return out;
  });
}

WorldSet truth_set(const NeighbourhoodModel& m, const Formula& f) {
  return truth_set_with(m, f, m.val);
}

bool eval(const NeighbourhoodModel& m, const std::string& world, const Formula& f) {
  int w = require_world(m.worlds, world);
  return truth_set(m, f).test(static_cast<std::size_t>(w));
}

WorldSet truth_set_with(const CoreModel& m, const Formula& f, const Valuation& val) {
  const std::size_t n = m.worlds.size();
  return truth_set_generic(n, val, f, [&](std::uint64_t grade, const WorldSet& sat) {
    WorldSet out(n);
    for (std::size_t w = 0; w < n; ++w)
      if (up_set_member(m.core[w], grade, sat)) out.set(w);
    return out;
  });
}

WorldSet truth_set(const CoreModel& m, const Formula& f) {
  return truth_set_with(m, f, m.val);
}

bool eval(const CoreModel& m, const std::string& world, const Formula& f) {
  int w = require_world(m.worlds, world);
  return truth_set(m, f).test(static_cast<std::size_t>(w));
}

std::optional<MonoViolation> is_monotonic(const NeighbourhoodModel& m, std::uint64_t budget) {
  const std::size_t n = m.worlds.size();
  Steps steps{budget};
  auto scan = [&](std::size_t w, std::uint64_t grade,
                  const std::vector<WorldSet>& coll) -> std::optional<MonoViolation> {
    for (const WorldSet& x : coll) {
      std::uint64_t comp = WorldSet::full(n).low_bits() & ~x.low_bits();
      steps.spend(1ull << static_cast<std::uint64_t>(__builtin_popcountll(comp)));
      for (std::uint64_t sub = (0 - comp) & comp; sub != 0; sub = (sub - comp) & comp) {
        WorldSet y = WorldSet::from_bits(n, x.low_bits() | sub);
        if (!collection_member(coll, y))
          return MonoViolation{static_cast<int>(w), grade, x, y};
      }
    }
    return std::nullopt;
  };
  for (std::size_t w = 0; w < n; ++w) {
    if (m.nu0[w])
      if (auto v = scan(w, 0, *m.nu0[w])) return v;
    for (std::uint64_t g = 1; g <= m.max_grade; ++g)
      if (auto v = scan(w, g, m.nu[w][g - 1])) return v;
  }
  return std::nullopt;
}

std::optional<MonoViolation> is_monotonic(const CoreModel&) {
  // Up-closures are closed under supersets by construction.
  return std::nullopt;
}

CoreModel bullet(const KripkeModel& m) {
  CoreModel c;
  c.worlds = m.worlds;
  c.core = m.rel;
  c.val = m.val;
  return c;
}

KripkeModel unbullet(const CoreModel& m) {
  KripkeModel k;
  k.worlds = m.worlds;
  k.rel = m.core;
  k.val = m.val;
  return k;
}

NeighbourhoodModel materialize(const CoreModel& m, std::optional<std::uint64_t> grade_bound) {
  const std::size_t n = m.worlds.size();
  if (n > kExplicitWorldCap)
    throw input_error("cannot materialize an implicit frame with more than 16 worlds");
  std::uint64_t bound = 0;
  if (grade_bound) {
    bound = *grade_bound;
  } else {
    for (const auto& a : m.core) bound = std::max<std::uint64_t>(bound, a.count());
  }
  NeighbourhoodModel e;
  e.worlds = m.worlds;
  e.max_grade = bound;
  e.nu.assign(n, std::vector<std::vector<WorldSet>>(bound));
  e.nu0.assign(n, std::nullopt);
  e.val = m.val;
  for (std::size_t w = 0; w < n; ++w)
    for (std::uint64_t g = 1; g <= bound; ++g)
      for_each_subset(n, [&](const WorldSet& x) {
        if (up_set_member(m.core[w], g, x)) e.nu[w][g - 1].push_back(x);
      });
  return e;
}

WorldSet extract_core(const NeighbourhoodModel& m, int w) {
  const std::size_t n = m.worlds.size();
  WorldSet a(n);
  if (m.max_grade == 0) return a;
  for (std::size_t i = 0; i < n; ++i) {
    WorldSet single(n);
    single.set(i);
    if (collection_member(m.nu[static_cast<std::size_t>(w)][0], single)) a.set(i);
  }
  return a;
}

GradedFrameVerdict is_graded_frame(const NeighbourhoodModel& m, std::uint64_t budget) {
  const std::size_t n = m.worlds.size();
  GradedFrameVerdict verdict;
  Steps steps{budget};
  for (std::size_t w = 0; w < n; ++w) {
    if (m.nu0[w] && m.nu0[w]->size() != (1ull << n)) {
      for_each_subset(n, [&](const WorldSet& x) {
        if (!verdict.violation && !collection_member(*m.nu0[w], x))
          verdict.violation = GradedFrameViolation{static_cast<int>(w), 0, x};
      });
      return verdict;
    }
    WorldSet a = extract_core(m, static_cast<int>(w));
    if (a.count() > m.max_grade) {
      // The represented family is empty beyond max_grade, but a core of this
      // size would demand a member there.
      WorldSet witness(n);
      std::size_t taken = 0;
      for (int i : a.members())
        if (taken++ <= m.max_grade) witness.set(static_cast<std::size_t>(i));
      verdict.violation =
          GradedFrameViolation{static_cast<int>(w), m.max_grade + 1, witness};
      return verdict;
    }
    for (std::uint64_t g = 1; g <= m.max_grade; ++g) {
      steps.spend(1ull << n);
      std::optional<WorldSet> bad;
      for_each_subset(n, [&](const WorldSet& x) {
        if (!bad && collection_member(m.nu[w][g - 1], x) != up_set_member(a, g, x))
          bad = x;
      });
      if (bad) {
        verdict.violation = GradedFrameViolation{static_cast<int>(w), g, *bad};
        return verdict;
      }
    }
    verdict.core.push_back(a);
  }
  return verdict;
}

GradedFrameVerdict is_graded_frame(const CoreModel& m) {
  GradedFrameVerdict verdict;
  verdict.core = m.core;
  return verdict;
}

namespace {

std::vector<WorldSet> minimal_members(const std::vector<WorldSet>& coll, Steps& steps) {
  std::vector<WorldSet> out;
  steps.spend(coll.size() * coll.size());
  for (const WorldSet& y : coll) {
    bool minimal = true;
    for (const WorldSet& z : coll)
      if (!(z == y) && z.is_subset_of(y)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(y);
  }
  return out;
}

}  // namespace

StarReport check_stars(const NeighbourhoodModel& m, std::uint64_t budget) {
  const std::size_t n = m.worlds.size();
  StarReport report;
  Steps steps{budget};

  // *1: nu_0 is the full powerset.
  for (std::size_t w = 0; w < n && !report.violation[0]; ++w) {
    if (!m.nu0[w] || m.nu0[w]->size() == (1ull << n)) continue;
    for_each_subset(n, [&](const WorldSet& x) {
      if (!report.violation[0] && !collection_member(*m.nu0[w], x))
        report.violation[0] = StarViolation{static_cast<int>(w), 0, {x}};
    });
  }

  // *2: closure under supersets, grades 1..N.
  for (std::size_t w = 0; w < n && !report.violation[1]; ++w)
    for (std::uint64_t g = 1; g <= m.max_grade && !report.violation[1]; ++g) {
      const auto& coll = m.nu[w][g - 1];
      for (const WorldSet& x : coll) {
        std::uint64_t comp = WorldSet::full(n).low_bits() & ~x.low_bits();
        steps.spend(1ull << static_cast<std::uint64_t>(__builtin_popcountll(comp)));
        bool done = false;
        for (std::uint64_t sub = (0 - comp) & comp; sub != 0 && !done;
             sub = (sub - comp) & comp) {
          WorldSet y = WorldSet::from_bits(n, x.low_bits() | sub);
          if (!collection_member(coll, y)) {
            report.violation[1] = StarViolation{static_cast<int>(w), g, {x, y}};
            done = true;
          }
        }
        if (done) break;
      }
    }

  // *3: the empty set is in no nu_n, n >= 1.
  for (std::size_t w = 0; w < n && !report.violation[2]; ++w)
    for (std::uint64_t g = 1; g <= m.max_grade; ++g)
      if (collection_member(m.nu[w][g - 1], WorldSet(n))) {
        report.violation[2] = StarViolation{static_cast<int>(w), g, {WorldSet(n)}};
        break;
      }

  // *4/*5 share the minimal members of each collection.
  for (std::size_t w = 0; w < n; ++w)
    for (std::uint64_t g = 1; g <= m.max_grade; ++g) {
      if (report.violation[3] && report.violation[4]) break;
      const auto& coll = m.nu[w][g - 1];
      std::vector<WorldSet> minimals = minimal_members(coll, steps);
      if (!report.violation[3]) {
        for (const WorldSet& x : coll) {
          bool found = false;
          for (const WorldSet& y : minimals)
            if (y.is_subset_of(x)) {
              found = true;
              break;
            }
          if (!found) {
            report.violation[3] = StarViolation{static_cast<int>(w), g, {x}};
            break;
          }
        }
      }
      if (!report.violation[4]) {
        for (const WorldSet& y : minimals) {
          bool atomic = true;
          for (int i : y.members()) {
            WorldSet single(n);
            single.set(static_cast<std::size_t>(i));
            if (!nu_member(m, static_cast<int>(w), 1, single)) {
              atomic = false;
              break;
            }
          }
          if (y.count() != g || !atomic) {
            report.violation[4] = StarViolation{static_cast<int>(w), g, {y}};
            break;
          }
        }
      }
    }

  // *6: unions of g distinct nu_1-singletons are minimal members of nu_g.
  // g runs to the singleton count; memberships beyond N read as empty, which
  // keeps the report aligned with gradedness at every natural grade.
  for (std::size_t w = 0; w < n && !report.violation[5]; ++w) {
    std::vector<int> atoms_w = extract_core(m, static_cast<int>(w)).members();
    for (std::uint64_t g = 1; g <= atoms_w.size() && !report.violation[5]; ++g) {
      for_each_combination(atoms_w, static_cast<std::size_t>(g), [&](const std::vector<int>& s) {
        steps.spend(1 + (g <= m.max_grade ? m.nu[w][g - 1].size() : 0));
        WorldSet u(n);
        for (int i : s) u.set(static_cast<std::size_t>(i));
        bool good = nu_member(m, static_cast<int>(w), g, u);
        if (good && g <= m.max_grade)
          for (const WorldSet& z : m.nu[w][g - 1])
            if (!(z == u) && z.is_subset_of(u)) {
              good = false;
              break;
            }
        if (!good) {
          report.violation[5] = StarViolation{static_cast<int>(w), g, {u}};
          return false;
        }
        return true;
      });
    }
  }

  return report;
}

std::optional<PropertyViolation> check_ax5_property(const NeighbourhoodModel& m,
                                                    std::uint64_t budget) {
  const std::size_t n = m.worlds.size();
  if (n >= 32 || (1ull << (2 * n)) > budget)
    throw budget_error("subset-pair enumeration exceeds the budget");
  for (std::size_t w = 0; w < n; ++w)
    for (std::uint64_t g = 0; g <= m.max_grade; ++g)
      for (std::uint64_t xm = 0; xm < (1ull << n); ++xm) {
        WorldSet x = WorldSet::from_bits(n, xm);
        if (!nu_member(m, static_cast<int>(w), g, x)) continue;
        for (std::uint64_t ym = 0; ym < (1ull << n); ++ym) {
          WorldSet diff = WorldSet::from_bits(n, xm & ~ym);
          if (nu_member(m, static_cast<int>(w), 1, diff)) continue;
          WorldSet y = WorldSet::from_bits(n, ym);
          if (!nu_member(m, static_cast<int>(w), g, y))
            return PropertyViolation{static_cast<int>(w), g, g, x, y};
        }
      }
  return std::nullopt;
}

std::optional<PropertyViolation> check_ax6_property(const NeighbourhoodModel& m,
                                                    std::uint64_t budget) {
  const std::size_t n = m.worlds.size();
  if (n >= 32 || (1ull << (2 * n)) > budget)
    throw budget_error("subset-pair enumeration exceeds the budget");
  auto exact = [&](std::size_t w, std::uint64_t g, const WorldSet& s) {
    return nu_member(m, static_cast<int>(w), g, s) &&
           !nu_member(m, static_cast<int>(w), g + 1, s);
  };
  for (std::size_t w = 0; w < n; ++w)
    for (std::uint64_t gm = 0; gm <= m.max_grade; ++gm)
      for (std::uint64_t gn = 0; gn <= m.max_grade; ++gn)
        for (std::uint64_t xm = 0; xm < (1ull << n); ++xm) {
          WorldSet x = WorldSet::from_bits(n, xm);
          if (!exact(w, gm, x)) continue;
          for (std::uint64_t ym = 0; ym < (1ull << n); ++ym) {
            WorldSet meet = WorldSet::from_bits(n, xm & ym);
            if (nu_member(m, static_cast<int>(w), 1, meet)) continue;
            WorldSet y = WorldSet::from_bits(n, ym);
            if (!exact(w, gn, y)) continue;
            if (!exact(w, gm + gn, WorldSet::from_bits(n, xm | ym)))
              return PropertyViolation{static_cast<int>(w), gm, gn, x, y};
          }
        }
  return std::nullopt;
}

WorldMap make_world_map(const std::vector<std::pair<std::string, std::string>>& pairs,
                        const std::vector<std::string>& src_worlds,
                        const std::vector<std::string>& dst_worlds) {
  WorldMap f;
  f.to.assign(src_worlds.size(), -1);
  for (const auto& [from, to] : pairs) {
    std::size_t w = static_cast<std::size_t>(require_world(src_worlds, from));
    if (f.to[w] != -1) throw input_error("duplicate map entry for " + from);
    f.to[w] = require_world(dst_worlds, to);
  }
  for (std::size_t w = 0; w < src_worlds.size(); ++w)
    if (f.to[w] == -1) throw input_error("map is not total: missing " + src_worlds[w]);
  return f;
}

namespace {

const NeighbourhoodModel& as_explicit(const NbhdFrame& frame, NeighbourhoodModel& storage) {
  if (const auto* e = std::get_if<NeighbourhoodModel>(&frame)) return *e;
  storage = materialize(std::get<CoreModel>(frame));
  return storage;
}

// Enumerate the members of nu_n(w) in canonical order. The powerset default
// at grade 0 is enumerated explicitly (costed against the budget).
template <typename Fn>
void for_each_member(const NeighbourhoodModel& m, std::size_t w, std::uint64_t grade,
                     Steps& steps, Fn&& fn) {
  const std::size_t n = m.worlds.size();
  if (grade == 0 && !m.nu0[w]) {
    steps.spend(1ull << n);
    for_each_subset(n, fn);
    return;
  }
  if (grade > m.max_grade) return;
  const auto& coll = grade == 0 ? *m.nu0[w] : m.nu[w][grade - 1];
  steps.spend(coll.size());
  for (const WorldSet& x : coll) fn(x);
}

}  // namespace

MorphismVerdict is_bounded_morphism(const WorldMap& f, const NbhdFrame& src,
                                    const NbhdFrame& dst, std::uint64_t budget) {
  NeighbourhoodModel src_storage, dst_storage;
  const NeighbourhoodModel& s = as_explicit(src, src_storage);
  const NeighbourhoodModel& d = as_explicit(dst, dst_storage);
  if (f.to.size() != s.worlds.size())
    throw input_error("map domain does not match the source frame");
  for (int t : f.to)
    if (t < 0 || static_cast<std::size_t>(t) >= d.worlds.size())
      throw input_error("map target outside the destination frame");

  MorphismVerdict verdict;
  WorldSet image_of_all(d.worlds.size());
  for (int t : f.to) image_of_all.set(static_cast<std::size_t>(t));
  verdict.surjective = image_of_all == WorldSet::full(d.worlds.size());

  auto image = [&](const WorldSet& x) {
    WorldSet out(d.worlds.size());
    for (int i : x.members()) out.set(static_cast<std::size_t>(f.to[i]));
    return out;
  };
  auto preimage = [&](const WorldSet& xp) {
    WorldSet out(s.worlds.size());
    for (std::size_t i = 0; i < s.worlds.size(); ++i)
      if (xp.test(static_cast<std::size_t>(f.to[i]))) out.set(i);
    return out;
  };

  Steps steps{budget};
  const std::uint64_t top = std::max(s.max_grade, d.max_grade);
  for (std::uint64_t g = 0; g <= top; ++g) {
    for (std::size_t w = 0; w < s.worlds.size(); ++w) {
      std::size_t wp = static_cast<std::size_t>(f.to[w]);
      // BM1: images of members are members. Trivial when nu'_0 defaults.
      if (!(g == 0 && !d.nu0[wp])) {
        std::optional<WorldSet> bad;
        for_each_member(s, w, g, steps, [&](const WorldSet& x) {
          if (!bad && !nu_member(d, static_cast<int>(wp), g, image(x))) bad = x;
        });
        if (bad) {
          verdict.violation = MorphismViolation{1, static_cast<int>(w), g, *bad};
          return verdict;
        }
      }
      // BM2: members downstairs pull back. Trivial when nu_0 defaults: the
      // empty set is a member and its image sits inside every X'.
      if (!(g == 0 && !s.nu0[w])) {
        std::optional<WorldSet> bad;
        for_each_member(d, wp, g, steps, [&](const WorldSet& xp) {
          if (bad) return;
          WorldSet p = preimage(xp);
          bool found = false;
          for_each_member(s, w, g, steps, [&](const WorldSet& x) {
            if (!found && x.is_subset_of(p)) found = true;
          });
          if (!found) bad = xp;
        });
        if (bad) {
          verdict.violation = MorphismViolation{2, static_cast<int>(w), g, *bad};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

namespace {

std::vector<WorldSet> up_closure(std::size_t n, const std::vector<std::uint64_t>& seeds) {
  std::vector<WorldSet> coll;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
    for (std::uint64_t seed : seeds)
      if ((mask & seed) == seed) {
        coll.push_back(WorldSet::from_bits(n, mask));
        break;
      }
  return coll;
}

std::vector<std::string> numbered_worlds(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

}  // namespace

std::optional<SearchHit> counterexample_search(const Formula& f, std::size_t max_worlds,
                                               std::uint64_t budget, std::uint64_t seed,
                                               FrameClass cls) {
  const std::vector<std::string> letters = atoms(f);
  const std::uint64_t need = std::max<std::uint64_t>(1, max_grade(f));
  if (cls == FrameClass::Monotonic && need > 64)
    throw budget_error("grades above 64 are not searchable in explicit space");
  Rng rng(seed);
  std::uint64_t candidate = 0;

  auto try_model = [&](auto&& model) -> std::optional<SearchHit> {
    WorldSet sat = truth_set(model, f);
    for (std::size_t w = 0; w < model.worlds.size(); ++w)
      if (!sat.test(w))
        return SearchHit{std::move(model), static_cast<int>(w), candidate};
    return std::nullopt;
  };

  // Exhaustive phase: one-world frames.
  if (max_worlds >= 1 && cls == FrameClass::Monotonic) {
    // The three up-closed collections over a singleton universe.
    const std::vector<std::vector<std::uint64_t>> options = {{}, {1}, {0}};
    std::uint64_t combos = 1;
    for (std::uint64_t g = 0; g < need && combos <= budget; ++g) combos *= options.size();
    for (std::uint64_t pick = 0; pick < combos && candidate < budget; ++pick) {
      for (std::uint64_t vbits = 0; vbits < (1ull << letters.size()); ++vbits) {
        if (candidate >= budget) break;
        NeighbourhoodModel m;
        m.worlds = numbered_worlds(1);
        m.max_grade = need;
        m.nu.assign(1, std::vector<std::vector<WorldSet>>(need));
        m.nu0.assign(1, std::nullopt);
        std::uint64_t p = pick;
        for (std::uint64_t g = 1; g <= need; ++g, p /= options.size())
          m.nu[0][g - 1] = up_closure(1, options[p % options.size()]);
        for (std::size_t j = 0; j < letters.size(); ++j)
          m.val[letters[j]] = WorldSet::from_bits(1, (vbits >> j) & 1);
        ++candidate;
        if (auto hit = try_model(std::move(m))) return hit;
      }
    }
  }
  if (max_worlds >= 1 && cls == FrameClass::GradedCore) {
    for (std::uint64_t core_bits = 0; core_bits < 2 && candidate < budget; ++core_bits)
      for (std::uint64_t vbits = 0; vbits < (1ull << letters.size()); ++vbits) {
        if (candidate >= budget) break;
        CoreModel m;
        m.worlds = numbered_worlds(1);
        m.core = {WorldSet::from_bits(1, core_bits)};
        for (std::size_t j = 0; j < letters.size(); ++j)
          m.val[letters[j]] = WorldSet::from_bits(1, (vbits >> j) & 1);
        ++candidate;
        if (auto hit = try_model(std::move(m))) return hit;
      }
  }

  // Randomized phase over 2..max_worlds worlds.
  if (max_worlds < 2) return std::nullopt;
  while (candidate < budget) {
    std::size_t k = 2 + static_cast<std::size_t>(rng.below(max_worlds - 1));
    ++candidate;
    if (cls == FrameClass::Monotonic) {
      NeighbourhoodModel m;
      m.worlds = numbered_worlds(k);
      m.max_grade = need;
      m.nu.assign(k, std::vector<std::vector<WorldSet>>(need));
      m.nu0.assign(k, std::nullopt);
      for (std::size_t w = 0; w < k; ++w)
        for (std::uint64_t g = 1; g <= need; ++g) {
          std::vector<std::uint64_t> seeds;
          std::uint64_t count = rng.below(3);
          for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(rng.below(1ull << k));
          m.nu[w][g - 1] = up_closure(k, seeds);
        }
      for (const auto& letter : letters) m.val[letter] = WorldSet::from_bits(k, rng.below(1ull << k));
      if (auto hit = try_model(std::move(m))) return hit;
    } else {
      CoreModel m;
      m.worlds = numbered_worlds(k);
      for (std::size_t w = 0; w < k; ++w)
        m.core.push_back(WorldSet::from_bits(k, rng.below(1ull << k)));
      for (const auto& letter : letters) m.val[letter] = WorldSet::from_bits(k, rng.below(1ull << k));
      if (auto hit = try_model(std::move(m))) return hit;
    }
  }
  return std::nullopt;
}

}  // namespace gml
