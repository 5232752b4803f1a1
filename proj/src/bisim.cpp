#include "gml/bisim.hpp"

#include <algorithm>
#include <cstdint>

#include "gml/errors.hpp"
#include "gml/rng.hpp"
#include "gml/subsets.hpp"
#include "gml/worlds.hpp"

namespace gml {
namespace {

struct Steps {
  std::uint64_t left;
  void spend(std::uint64_t k) {
    if (k > left) throw budget_error("bisimulation check exceeds budget");
    left -= k;
  }
};

std::vector<std::string> union_letters(const Valuation& a, const Valuation& b) {
  std::vector<std::string> out;
  for (const auto& [letter, set] : a) out.push_back(letter);
  for (const auto& [letter, set] : b) out.push_back(letter);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool letter_holds(const Valuation& val, const std::string& letter, int w) {
  auto it = val.find(letter);
  return it != val.end() && it->second.test(w);
}

void validate_relation(const BisimRelation& z, std::size_t n_left, std::size_t n_right) {
  for (const auto& [w, wp] : z.pairs) {
    if (w < 0 || static_cast<std::size_t>(w) >= n_left || wp < 0 ||
        static_cast<std::size_t>(wp) >= n_right)
      throw input_error("relation pair out of range");
  }
}

// rows[w] = Z-image of w in the right universe; cols[w'] = preimage.
std::vector<WorldSet> relation_rows(const BisimRelation& z, std::size_t n_left,
                                    std::size_t n_right) {
  std::vector<WorldSet> rows(n_left, WorldSet(n_right));
  for (const auto& [w, wp] : z.pairs) rows[w].set(wp);
  return rows;
}

std::vector<WorldSet> relation_cols(const BisimRelation& z, std::size_t n_left,
                                    std::size_t n_right) {
  std::vector<WorldSet> cols(n_right, WorldSet(n_left));
  for (const auto& [w, wp] : z.pairs) cols[wp].set(w);
  return cols;
}

// Forth and Back for one related pair, minimal-witness form. Prop is the
// caller's business (the greatest-fixpoint loop never re-checks it).
BisimVerdict graded_pair_violation(const KripkeModel& left, const KripkeModel& right,
                                   const std::vector<WorldSet>& rows,
                                   const std::vector<WorldSet>& cols, int w, int wp,
                                   std::size_t witness_budget) {
  const std::vector<int> out_l = left.rel[w].members();
  const std::vector<int> out_r = right.rel[wp].members();
  if (out_l.size() > witness_budget || out_r.size() > witness_budget)
    throw budget_error("out-degree " + std::to_string(std::max(out_l.size(), out_r.size())) +
                       " exceeds witness budget " + std::to_string(witness_budget));
  const std::size_t top = std::max(out_l.size(), out_r.size());
  BisimVerdict found;
  for (std::size_t n = 1; n <= top && !found; ++n) {
    for_each_combination(out_l, n, [&](const std::vector<int>& chosen) {
      WorldSet image(right.worlds.size());
      for (int x : chosen) image |= rows[x];
      if (image.intersect_count(right.rel[wp]) < n) {
        found = BisimViolation{BisimViolation::Forth, {w, wp}, n,
                               WorldSet::of(left.worlds.size(), chosen), ""};
        return false;
      }
      return true;
    });
    if (found) break;
    for_each_combination(out_r, n, [&](const std::vector<int>& chosen) {
      WorldSet preimage(left.worlds.size());
      for (int x : chosen) preimage |= cols[x];
      if (preimage.intersect_count(left.rel[w]) < n) {
        found = BisimViolation{BisimViolation::Back, {w, wp}, n,
                               WorldSet::of(right.worlds.size(), chosen), ""};
        return false;
      }
      return true;
    });
  }
  return found;
}

}  // namespace

BisimRelation make_relation(const std::vector<std::pair<std::string, std::string>>& pairs,
                            const std::vector<std::string>& left_worlds,
                            const std::vector<std::string>& right_worlds) {
  BisimRelation z;
  for (const auto& [l, r] : pairs)
    z.pairs.emplace_back(require_world(left_worlds, l), require_world(right_worlds, r));
  std::sort(z.pairs.begin(), z.pairs.end());
  if (std::adjacent_find(z.pairs.begin(), z.pairs.end()) != z.pairs.end())
    throw input_error("duplicate relation pair");
  return z;
}

BisimVerdict check_graded_bisim(const BisimRelation& z, const KripkeModel& left,
                                const KripkeModel& right, std::size_t witness_budget) {
  if (z.pairs.empty()) throw input_error("empty relation");
  validate_relation(z, left.worlds.size(), right.worlds.size());
  const auto rows = relation_rows(z, left.worlds.size(), right.worlds.size());
  const auto cols = relation_cols(z, left.worlds.size(), right.worlds.size());
  const auto letters = union_letters(left.val, right.val);
  for (const auto& [w, wp] : z.pairs) {
    for (const auto& letter : letters)
      if (letter_holds(left.val, letter, w) != letter_holds(right.val, letter, wp))
        return BisimViolation{BisimViolation::Prop, {w, wp}, 0,
                              WorldSet(left.worlds.size()), letter};
    if (auto v = graded_pair_violation(left, right, rows, cols, w, wp, witness_budget)) return v;
  }
  return std::nullopt;
}

BisimRelation largest_graded_bisim(const KripkeModel& left, const KripkeModel& right,
                                   std::size_t witness_budget) {
  const auto letters = union_letters(left.val, right.val);
  BisimRelation z;
  for (std::size_t w = 0; w < left.worlds.size(); ++w)
    for (std::size_t wp = 0; wp < right.worlds.size(); ++wp) {
      bool agree = true;
      for (const auto& letter : letters)
        if (letter_holds(left.val, letter, static_cast<int>(w)) !=
            letter_holds(right.val, letter, static_cast<int>(wp))) {
          agree = false;
          break;
        }
      if (agree) z.pairs.emplace_back(static_cast<int>(w), static_cast<int>(wp));
    }
  for (;;) {
    const auto rows = relation_rows(z, left.worlds.size(), right.worlds.size());
    const auto cols = relation_cols(z, left.worlds.size(), right.worlds.size());
    std::vector<std::pair<int, int>> keep;
    for (const auto& [w, wp] : z.pairs)
      if (!graded_pair_violation(left, right, rows, cols, w, wp, witness_budget))
        keep.push_back({w, wp});
    if (keep.size() == z.pairs.size()) return z;
    z.pairs = std::move(keep);
  }
}

namespace {

// Uniform view of the two neighbourhood presentations for bisimulation
// clauses. Obligations are the sets a Forth/Back clause quantifies over;
// for implicit frames those reduce to the minimal members, the n-element
// subsets of the core.
struct NbhdSide {
  const NeighbourhoodModel* expl = nullptr;
  const CoreModel* core = nullptr;

  std::size_t size() const { return expl ? expl->worlds.size() : core->worlds.size(); }
  const Valuation& val() const { return expl ? expl->val : core->val; }

  std::uint64_t grade_bound(int w) const {
    return expl ? expl->max_grade : core->core[w].count();
  }

  // Visit the sets that generate nu_g(w); g >= 1. Visitor returns false to
  // stop early; the function returns false iff stopped.
  template <typename Fn>
  bool each_obligation(int w, std::uint64_t g, Steps& steps, Fn&& fn) const {
    if (expl) {
      if (g > expl->max_grade) return true;  // empty beyond the bound
      for (const WorldSet& x : expl->nu[w][g - 1]) {
        steps.spend(1);
        if (!fn(x)) return false;
      }
      return true;
    }
    const std::vector<int> pool = core->core[w].members();
    return for_each_combination(pool, g, [&](const std::vector<int>& chosen) {
      steps.spend(1);
      return fn(WorldSet::of(core->worlds.size(), chosen));
    });
  }

  // Does nu_g(w) contain a subset of cover? g >= 1. For implicit frames
  // that is a popcount test on the core; explicit collections are scanned.
  bool has_witness_within(int w, std::uint64_t g, const WorldSet& cover, Steps& steps) const {
    if (core) return core->core[w].intersect_count(cover) >= g;
    if (g > expl->max_grade) return false;
    for (const WorldSet& x : expl->nu[w][g - 1]) {
      steps.spend(1);
      if (x.is_subset_of(cover)) return true;
    }
    return false;
  }

  bool nu0_has_empty(int w) const {
    if (core) return true;
    const auto& over = expl->nu0[w];
    if (!over) return true;
    return std::binary_search(over->begin(), over->end(), WorldSet(expl->worlds.size()));
  }

  bool nu0_overridden(int w) const { return expl && expl->nu0[w].has_value(); }

  template <typename Fn>
  bool each_nu0_member(int w, Steps& steps, Fn&& fn) const {
    if (expl && expl->nu0[w]) {
      for (const WorldSet& x : *expl->nu0[w]) {
        steps.spend(1);
        if (!fn(x)) return false;
      }
      return true;
    }
    const std::size_t n = size();
    if (n >= 63) throw budget_error("default grade-0 family too large to enumerate");
    steps.spend(1ull << n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask)
      if (!fn(WorldSet::from_bits(n, mask))) return false;
    return true;
  }

  bool has_witness_within0(int w, const WorldSet& cover, Steps& steps) const {
    if (!nu0_overridden(w)) return true;  // the empty set always qualifies
    for (const WorldSet& x : *expl->nu0[w]) {
      steps.spend(1);
      if (x.is_subset_of(cover)) return true;
    }
    return false;
  }
};

NbhdSide side_of(const NbhdFrame& f) {
  NbhdSide s;
  if (const auto* e = std::get_if<NeighbourhoodModel>(&f))
    s.expl = e;
  else
    s.core = &std::get<CoreModel>(f);
  return s;
}

// One direction of the monotonic clause at one grade: every obligation of
// `from` at (w,g) needs a member of nu_g on `to` at v covered by its Z-image.
template <typename Union>
std::optional<WorldSet> monotonic_direction_violation(const NbhdSide& from, const NbhdSide& to,
                                                      int w, int v, std::uint64_t g,
                                                      Union&& image_of, Steps& steps) {
  std::optional<WorldSet> bad;
  if (g == 0) {
    if (to.nu0_has_empty(v)) return bad;
    from.each_nu0_member(w, steps, [&](const WorldSet& x) {
      if (!to.has_witness_within0(v, image_of(x), steps)) {
        bad = x;
        return false;
      }
      return true;
    });
    return bad;
  }
  from.each_obligation(w, g, steps, [&](const WorldSet& x) {
    if (!to.has_witness_within(v, g, image_of(x), steps)) {
      bad = x;
      return false;
    }
    return true;
  });
  return bad;
}

}  // namespace

BisimVerdict check_monotonic_bisim(const BisimRelation& z, const NbhdFrame& left,
                                   const NbhdFrame& right, std::uint64_t budget) {
  const NbhdSide ls = side_of(left);
  const NbhdSide rs = side_of(right);
  if (z.pairs.empty()) throw input_error("empty relation");
  validate_relation(z, ls.size(), rs.size());
  const auto rows = relation_rows(z, ls.size(), rs.size());
  const auto cols = relation_cols(z, ls.size(), rs.size());
  const auto letters = union_letters(ls.val(), rs.val());
  Steps steps{budget};
  const auto row_image = [&](const WorldSet& x) {
    WorldSet u(rs.size());
    for (int m : x.members()) u |= rows[m];
    return u;
  };
  const auto col_image = [&](const WorldSet& x) {
    WorldSet u(ls.size());
    for (int m : x.members()) u |= cols[m];
    return u;
  };
  for (const auto& [w, wp] : z.pairs) {
    for (const auto& letter : letters)
      if (letter_holds(ls.val(), letter, w) != letter_holds(rs.val(), letter, wp))
        return BisimViolation{BisimViolation::Prop, {w, wp}, 0, WorldSet(ls.size()), letter};
    const std::uint64_t top = std::max(ls.grade_bound(w), rs.grade_bound(wp));
    for (std::uint64_t g = 0; g <= top; ++g) {
      if (auto x = monotonic_direction_violation(ls, rs, w, wp, g, row_image, steps))
        return BisimViolation{BisimViolation::Forth, {w, wp}, g, *x, ""};
      if (auto x = monotonic_direction_violation(rs, ls, wp, w, g, col_image, steps))
        return BisimViolation{BisimViolation::Back, {w, wp}, g, *x, ""};
    }
  }
  return std::nullopt;
}

TupleBisim make_tuple_bisim(
    const std::vector<std::pair<std::uint64_t,
                                std::vector<std::pair<std::vector<std::string>,
                                                      std::vector<std::string>>>>>& entries,
    const std::vector<std::string>& left_worlds, const std::vector<std::string>& right_worlds) {
  const auto set_of = [](const std::vector<std::string>& names,
                         const std::vector<std::string>& worlds) {
    WorldSet x(worlds.size());
    for (const auto& name : names) {
      int i = require_world(worlds, name);
      if (x.test(i)) throw input_error("duplicate world " + name + " in set");
      x.set(i);
    }
    return x;
  };
  TupleBisim t;
  for (const auto& [grade, pairs] : entries) {
    if (grade == 0) throw input_error("tuple family is indexed from 1");
    if (grade > 64) throw input_error("tuple family index above 64");
    if (t.family.size() < grade) t.family.resize(grade);
    auto& bucket = t.family[grade - 1];
    if (!bucket.empty()) throw input_error("duplicate family entry for index " +
                                           std::to_string(grade));
    for (const auto& [l, r] : pairs)
      bucket.emplace_back(set_of(l, left_worlds), set_of(r, right_worlds));
    std::sort(bucket.begin(), bucket.end());
    if (std::adjacent_find(bucket.begin(), bucket.end()) != bucket.end())
      throw input_error("duplicate pair in family entry " + std::to_string(grade));
  }
  return t;
}

TupleVerdict check_tuple_bisim(const TupleBisim& t, const KripkeModel& left,
                               const KripkeModel& right) {
  const std::size_t nl = left.worlds.size();
  const std::size_t nr = right.worlds.size();
  for (const auto& bucket : t.family)
    for (const auto& [x, xp] : bucket)
      if (x.universe() != nl || xp.universe() != nr)
        throw input_error("tuple family sets do not match the model world counts");
  // (1) the singleton layer carries the whole definition; it must be there.
  if (t.family.empty() || t.family[0].empty())
    return TupleViolation{1, 1, WorldSet(nl), WorldSet(nr), {}, ""};
  // (3) size discipline per layer.
  for (std::size_t i = 1; i <= t.family.size(); ++i)
    for (const auto& [x, xp] : t.family[i - 1])
      if (x.count() != i || xp.count() != i)
        return TupleViolation{3, i, x, xp, {}, ""};
  const auto letters = union_letters(left.val, right.val);
  // (4) singleton pairs agree on letters.
  for (const auto& [x, xp] : t.family[0]) {
    if (x.count() != 1 || xp.count() != 1) continue;  // item 3 already flags these
    const int w = x.members()[0];
    const int wp = xp.members()[0];
    for (const auto& letter : letters)
      if (letter_holds(left.val, letter, w) != letter_holds(right.val, letter, wp))
        return TupleViolation{4, 1, x, xp, {}, letter};
  }
  const auto layer_has = [&](std::size_t i, const WorldSet* lhs, const WorldSet* rhs,
                             const WorldSet& inside) {
    if (i > t.family.size()) return false;
    for (const auto& [x, xp] : t.family[i - 1]) {
      if (lhs && !(x == *lhs)) continue;
      if (rhs && !(xp == *rhs)) continue;
      if ((lhs ? xp : x).is_subset_of(inside)) return true;
    }
    return false;
  };
  // (5)/(6) successor-set transfer from the singleton layer.
  for (const auto& [x, xp] : t.family[0]) {
    if (x.count() != 1 || xp.count() != 1) continue;
    const int w = x.members()[0];
    const int wp = xp.members()[0];
    const std::vector<int> out_l = left.rel[w].members();
    const std::vector<int> out_r = right.rel[wp].members();
    for (std::size_t i = 1; i <= out_l.size(); ++i) {
      TupleVerdict found;
      for_each_combination(out_l, i, [&](const std::vector<int>& chosen) {
        const WorldSet s = WorldSet::of(nl, chosen);
        if (!layer_has(i, &s, nullptr, right.rel[wp])) {
          found = TupleViolation{5, i, x, xp, s, ""};
          return false;
        }
        return true;
      });
      if (found) return found;
    }
    for (std::size_t i = 1; i <= out_r.size(); ++i) {
      TupleVerdict found;
      for_each_combination(out_r, i, [&](const std::vector<int>& chosen) {
        const WorldSet s = WorldSet::of(nr, chosen);
        if (!layer_has(i, nullptr, &s, left.rel[w])) {
          found = TupleViolation{6, i, x, xp, s, ""};
          return false;
        }
        return true;
      });
      if (found) return found;
    }
  }
  // (7) every layer refines the singleton layer elementwise.
  std::vector<WorldSet> rows(nl, WorldSet(nr));
  std::vector<WorldSet> cols(nr, WorldSet(nl));
  for (const auto& [x, xp] : t.family[0])
    if (x.count() == 1 && xp.count() == 1) {
      rows[x.members()[0]].set(xp.members()[0]);
      cols[xp.members()[0]].set(x.members()[0]);
    }
  for (std::size_t i = 1; i <= t.family.size(); ++i)
    for (const auto& [x, xp] : t.family[i - 1]) {
      for (int m : x.members())
        if (!rows[m].intersects(xp))
          return TupleViolation{7, i, x, xp, WorldSet::of(nl, {m}), ""};
      for (int m : xp.members())
        if (!cols[m].intersects(x))
          return TupleViolation{7, i, x, xp, WorldSet::of(nr, {m}), ""};
    }
  return std::nullopt;
}

BisimRelation tuple_to_graded(const TupleBisim& t) {
  BisimRelation z;
  if (t.family.empty()) return z;
  for (const auto& [x, xp] : t.family[0])
    if (x.count() == 1 && xp.count() == 1)
      z.pairs.emplace_back(x.members()[0], xp.members()[0]);
  std::sort(z.pairs.begin(), z.pairs.end());
  z.pairs.erase(std::unique(z.pairs.begin(), z.pairs.end()), z.pairs.end());
  return z;
}

TupleBisim graded_to_tuple(const BisimRelation& z, const KripkeModel& left,
                           const KripkeModel& right, std::optional<std::uint64_t> size_bound,
                           std::uint64_t budget) {
  const std::size_t nl = left.worlds.size();
  const std::size_t nr = right.worlds.size();
  validate_relation(z, nl, nr);
  std::uint64_t bound = 1;
  if (size_bound) {
    bound = std::max<std::uint64_t>(1, *size_bound);
  } else {
    for (const auto& row : left.rel) bound = std::max<std::uint64_t>(bound, row.count());
    for (const auto& row : right.rel) bound = std::max<std::uint64_t>(bound, row.count());
  }
  const auto rows = relation_rows(z, nl, nr);
  const auto cols = relation_cols(z, nl, nr);
  Steps steps{budget};
  TupleBisim t;
  t.family.resize(std::min<std::uint64_t>(bound, std::max(nl, nr)));
  std::vector<int> all_l(nl), all_r(nr);
  for (std::size_t i = 0; i < nl; ++i) all_l[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < nr; ++i) all_r[i] = static_cast<int>(i);
  for (std::size_t i = 1; i <= t.family.size(); ++i) {
    auto& bucket = t.family[i - 1];
    for_each_combination(all_l, i, [&](const std::vector<int>& lc) {
      const WorldSet x = WorldSet::of(nl, lc);
      for_each_combination(all_r, i, [&](const std::vector<int>& rc) {
        steps.spend(1);
        const WorldSet xp = WorldSet::of(nr, rc);
        for (int m : lc)
          if (!rows[m].intersects(xp)) return true;
        for (int m : rc)
          if (!cols[m].intersects(x)) return true;
        bucket.emplace_back(x, xp);
        return true;
      });
      return true;
    });
  }
  return t;
}

EquivSample equiv_sample(const KripkeModel& left, const std::string& left_world,
                         const KripkeModel& right, const std::string& right_world,
                         std::uint64_t trials, unsigned depth, std::uint64_t grade_bound,
                         std::uint64_t seed) {
  const int li = require_world(left.worlds, left_world);
  const int ri = require_world(right.worlds, right_world);
  std::vector<std::string> letters = union_letters(left.val, right.val);
  if (letters.empty()) letters.push_back("p");
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Formula f = random_formula(rng, depth, grade_bound, letters);
    if (truth_set(left, f).test(li) != truth_set(right, f).test(ri))
      return EquivSample{f, t + 1};
  }
  return EquivSample{std::nullopt, trials};
}

}  // namespace gml
