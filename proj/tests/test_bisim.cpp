#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gml/bisim.hpp"
#include "gml/errors.hpp"
#include "gml/fixtures.hpp"
#include "gml/formula.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/random_models.hpp"
#include "gml/rng.hpp"
#include "gml/worlds.hpp"

using namespace gml;

namespace {

// The two-successor / one-successor pair: dia_2 p separates the roots.
struct DiaTwoPair {
  KripkeModel left = make_kripke({"s", "t1", "t2"}, {{"s", "t1"}, {"s", "t2"}},
                                 {{"p", {"t1", "t2"}}});
  KripkeModel right = make_kripke({"s", "t"}, {{"s", "t"}}, {{"p", {"t"}}});
  BisimRelation same_letter() const {
    return make_relation({{"s", "s"}, {"t1", "t"}, {"t2", "t"}}, left.worlds, right.worlds);
  }
};

BisimRelation identity_relation(const KripkeModel& m) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& w : m.worlds) pairs.push_back({w, w});
  return make_relation(pairs, m.worlds, m.worlds);
}

// Literal Forth/Back quantification over full up-closures: for every X with
// |X cap R[w]| >= n there must be X' with |X' cap R'[w']| >= n inside Z[X]
// (and symmetrically). The production check uses the minimal-witness
// reduction; this oracle is the contract it is tested against.
bool literal_graded_bisim(const BisimRelation& z, const KripkeModel& l, const KripkeModel& r) {
  const std::size_t nl = l.worlds.size(), nr = r.worlds.size();
  auto row_image = [&](const WorldSet& x) {
    WorldSet out(nr);
    for (const auto& [a, b] : z.pairs)
      if (x.test(static_cast<std::size_t>(a))) out.set(static_cast<std::size_t>(b));
    return out;
  };
  auto col_image = [&](const WorldSet& xp) {
    WorldSet out(nl);
    for (const auto& [a, b] : z.pairs)
      if (xp.test(static_cast<std::size_t>(b))) out.set(static_cast<std::size_t>(a));
    return out;
  };
  for (const auto& [w, wp] : z.pairs) {
    for (const auto& [letter, men] : l.val) {
      bool lv = men.test(static_cast<std::size_t>(w));
      auto it = r.val.find(letter);
      if (lv != (it != r.val.end() && it->second.test(static_cast<std::size_t>(wp))))
        return false;
    }
    for (const auto& [letter, men] : r.val) {
      bool rv = men.test(static_cast<std::size_t>(wp));
      auto it = l.val.find(letter);
      if (rv != (it != l.val.end() && it->second.test(static_cast<std::size_t>(w))))
        return false;
    }
    const WorldSet& out_l = l.rel[static_cast<std::size_t>(w)];
    const WorldSet& out_r = r.rel[static_cast<std::size_t>(wp)];
    std::uint64_t top = std::max(out_l.count(), out_r.count());
    for (std::uint64_t n = 1; n <= top; ++n) {
      for (std::uint64_t xm = 0; xm < (1ull << nl); ++xm) {
        WorldSet x = WorldSet::from_bits(nl, xm);
        if (x.intersect_count(out_l) < n) continue;
        bool ok = false;
        for (std::uint64_t pm = 0; pm < (1ull << nr) && !ok; ++pm) {
          WorldSet xp = WorldSet::from_bits(nr, pm);
          if (xp.intersect_count(out_r) >= n && xp.is_subset_of(row_image(x))) ok = true;
        }
        if (!ok) return false;
      }
      for (std::uint64_t pm = 0; pm < (1ull << nr); ++pm) {
        WorldSet xp = WorldSet::from_bits(nr, pm);
        if (xp.intersect_count(out_r) < n) continue;
        bool ok = false;
        for (std::uint64_t xm = 0; xm < (1ull << nl) && !ok; ++xm) {
          WorldSet x = WorldSet::from_bits(nl, xm);
          if (x.intersect_count(out_l) >= n && x.is_subset_of(col_image(xp))) ok = true;
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

// All nonempty relations between the two world sets, pairs kept sorted.
template <typename Fn>
void for_each_relation(std::size_t nl, std::size_t nr, Fn&& fn) {
  for (std::uint64_t mask = 1; mask < (1ull << (nl * nr)); ++mask) {
    BisimRelation z;
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b)
        if (mask & (1ull << (a * nr + b)))
          z.pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
    fn(z);
  }
}

bool contains_pair(const BisimRelation& z, int a, int b) {
  return std::binary_search(z.pairs.begin(), z.pairs.end(), std::pair<int, int>(a, b));
}

}  // namespace

TEST_CASE("identity relations are graded bisimulations") {
  KripkeModel m = figure1_kripke();
  CHECK_FALSE(check_graded_bisim(identity_relation(m), m, m).has_value());
}

TEST_CASE("letter disagreement is a Prop violation") {
  KripkeModel l = make_kripke({"a"}, {}, {{"p", {"a"}}});
  KripkeModel r = make_kripke({"b"}, {}, {});
  BisimRelation z = make_relation({{"a", "b"}}, l.worlds, r.worlds);
  BisimVerdict v = check_graded_bisim(z, l, r);
  REQUIRE(v.has_value());
  CHECK(v->clause == BisimViolation::Prop);
  CHECK(v->letter == "p");
  CHECK(v->at == std::pair<int, int>(0, 0));
}

TEST_CASE("a missing second successor is a Forth violation at grade 2") {
  DiaTwoPair d;
  // Sanity: dia_2 p really separates the two roots.
  CHECK(eval(d.left, "s", parse("(dia 2 p)")));
  CHECK_FALSE(eval(d.right, "s", parse("(dia 2 p)")));

  BisimVerdict v = check_graded_bisim(d.same_letter(), d.left, d.right);
  REQUIRE(v.has_value());
  CHECK(v->clause == BisimViolation::Forth);
  CHECK(v->grade == 2);
  CHECK(d.left.worlds[static_cast<std::size_t>(v->at.first)] == "s");
  CHECK(set_names(d.left.worlds, v->witness) == std::vector<std::string>{"t1", "t2"});

  SUBCASE("swapping the models turns it into a Back violation") {
    BisimRelation swapped = make_relation({{"s", "s"}, {"t", "t1"}, {"t", "t2"}},
                                          d.right.worlds, d.left.worlds);
    BisimVerdict b = check_graded_bisim(swapped, d.right, d.left);
    REQUIRE(b.has_value());
    CHECK(b->clause == BisimViolation::Back);
    CHECK(b->grade == 2);
  }
}

TEST_CASE("relation plumbing errors") {
  KripkeModel m = figure1_kripke();
  CHECK_THROWS_AS(check_graded_bisim(BisimRelation{}, m, m), input_error);
  CHECK_THROWS_AS(make_relation({{"w", "nope"}}, m.worlds, m.worlds), input_error);

  // Out-degrees above the witness budget refuse instead of silently passing.
  CHECK_THROWS_AS(check_graded_bisim(identity_relation(m), m, m, 2), budget_error);
}

TEST_CASE("largest graded bisimulation") {
  SUBCASE("contains the identity on a model against itself") {
    KripkeModel m = figure1_kripke();
    BisimRelation z = largest_graded_bisim(m, m);
    for (std::size_t w = 0; w < m.worlds.size(); ++w)
      CHECK(contains_pair(z, static_cast<int>(w), static_cast<int>(w)));
    // u2, u3, u4 are mutually indistinguishable, and distinguishable from u1.
    int u1 = require_world(m.worlds, "u1");
    int u2 = require_world(m.worlds, "u2");
    int u3 = require_world(m.worlds, "u3");
    CHECK(contains_pair(z, u2, u3));
    CHECK_FALSE(contains_pair(z, u1, u2));
  }
  SUBCASE("omits the dia-2-p roots") {
    DiaTwoPair d;
    BisimRelation z = largest_graded_bisim(d.left, d.right);
    int sl = require_world(d.left.worlds, "s");
    int sr = require_world(d.right.worlds, "s");
    CHECK_FALSE(contains_pair(z, sl, sr));
    CHECK(contains_pair(z, require_world(d.left.worlds, "t1"),
                        require_world(d.right.worlds, "t")));
  }
  SUBCASE("pairs in the result are never distinguished by sampled formulas") {
    Rng rng(4004);
    for (int i = 0; i < 10; ++i) {
      std::size_t nl = 1 + rng.below(4), nr = 1 + rng.below(4);
      KripkeModel l = random_kripke_bounded(rng, nl, {"p"}, 3);
      KripkeModel r = random_kripke_bounded(rng, nr, {"p"}, 3);
      BisimRelation z = largest_graded_bisim(l, r);
      for (const auto& [a, b] : z.pairs) {
        EquivSample s = equiv_sample(l, l.worlds[static_cast<std::size_t>(a)],
                                     r, r.worlds[static_cast<std::size_t>(b)],
                                     200, 3, 3, 99 + static_cast<std::uint64_t>(i));
        CAPTURE(i);
        CHECK_FALSE(s.distinguishing.has_value());
      }
    }
  }
}

TEST_CASE("minimal-witness check equals the literal clause, exhaustively") {
  Rng rng(606);
  for (int i = 0; i < 6; ++i) {
    std::size_t nl = 1 + rng.below(3), nr = 1 + rng.below(3);
    KripkeModel l = random_kripke_bounded(rng, nl, {"p"}, 3);
    KripkeModel r = random_kripke_bounded(rng, nr, {"p"}, 3);
    BisimRelation largest = largest_graded_bisim(l, r);
    for_each_relation(nl, nr, [&](const BisimRelation& z) {
      bool reduced = !check_graded_bisim(z, l, r).has_value();
      CAPTURE(i);
      REQUIRE(reduced == literal_graded_bisim(z, l, r));
      // Coinduction: every passing relation sits inside the largest one.
      if (reduced)
        for (const auto& p : z.pairs)
          REQUIRE(contains_pair(largest, p.first, p.second));
    });
  }
}

TEST_CASE("tuple bisimulation clauses") {
  DiaTwoPair d;

  SUBCASE("an empty first layer is item 1") {
    TupleBisim t = make_tuple_bisim({{2, {{{"t1", "t2"}, {"s", "t"}}}}},
                                    d.left.worlds, d.right.worlds);
    TupleVerdict v = check_tuple_bisim(t, d.left, d.right);
    REQUIRE(v.has_value());
    CHECK(v->item == 1);
  }
  SUBCASE("a size mismatch is item 3") {
    TupleBisim t = make_tuple_bisim({{1, {{{"s"}, {"s"}}}}, {2, {{{"t1"}, {"t"}}}}},
                                    d.left.worlds, d.right.worlds);
    TupleVerdict v = check_tuple_bisim(t, d.left, d.right);
    REQUIRE(v.has_value());
    CHECK(v->item == 3);
    CHECK(v->grade == 2);
  }
  SUBCASE("letter disagreement on singletons is item 4") {
    TupleBisim t = make_tuple_bisim({{1, {{{"s"}, {"t"}}}}},
                                    d.left.worlds, d.right.worlds);
    TupleVerdict v = check_tuple_bisim(t, d.left, d.right);
    REQUIRE(v.has_value());
    CHECK(v->item == 4);
    CHECK(v->letter == "p");
  }
  SUBCASE("an unmatched successor subset is item 5") {
    KripkeModel l = make_kripke({"s", "t"}, {{"s", "t"}}, {});
    KripkeModel r = make_kripke({"s"}, {}, {});
    TupleBisim t = make_tuple_bisim({{1, {{{"s"}, {"s"}}, {{"t"}, {"s"}}}}},
                                    l.worlds, r.worlds);
    TupleVerdict v = check_tuple_bisim(t, l, r);
    REQUIRE(v.has_value());
    CHECK(v->item == 5);
    CHECK(v->grade == 1);
    REQUIRE(v->witness.has_value());
    CHECK(set_names(l.worlds, *v->witness) == std::vector<std::string>{"t"});
  }
  SUBCASE("the mirror image is item 6") {
    KripkeModel l = make_kripke({"s"}, {}, {});
    KripkeModel r = make_kripke({"s", "t"}, {{"s", "t"}}, {});
    TupleBisim t = make_tuple_bisim({{1, {{{"s"}, {"s"}}, {{"s"}, {"t"}}}}},
                                    l.worlds, r.worlds);
    TupleVerdict v = check_tuple_bisim(t, l, r);
    REQUIRE(v.has_value());
    CHECK(v->item == 6);
    REQUIRE(v->witness.has_value());
    CHECK(set_names(r.worlds, *v->witness) == std::vector<std::string>{"t"});
  }
  SUBCASE("higher layers must be elementwise related: item 7") {
    KripkeModel m = make_kripke({"a", "b"}, {}, {});
    TupleBisim t = make_tuple_bisim({{1, {{{"a"}, {"a"}}}},
                                     {2, {{{"a", "b"}, {"a", "b"}}}}},
                                    m.worlds, m.worlds);
    TupleVerdict v = check_tuple_bisim(t, m, m);
    REQUIRE(v.has_value());
    CHECK(v->item == 7);
    CHECK(v->grade == 2);
  }
  SUBCASE("construction rejects grade 0 and duplicates") {
    CHECK_THROWS_AS(make_tuple_bisim({{0, {{{"s"}, {"s"}}}}}, d.left.worlds, d.right.worlds),
                    input_error);
    CHECK_THROWS_AS(make_tuple_bisim({{1, {{{"s"}, {"s"}}, {{"s"}, {"s"}}}}},
                                     d.left.worlds, d.right.worlds),
                    input_error);
  }
}

TEST_CASE("conversions between the two presentations") {
  SUBCASE("tuple_to_graded projects the singleton layer") {
    KripkeModel l = make_kripke({"a"}, {}, {});
    KripkeModel r = make_kripke({"c"}, {}, {});
    TupleBisim t = make_tuple_bisim({{1, {{{"a"}, {"c"}}}}}, l.worlds, r.worlds);
    BisimRelation z = tuple_to_graded(t);
    REQUIRE(z.pairs.size() == 1);
    CHECK(z.pairs[0] == std::pair<int, int>(0, 0));
  }
  SUBCASE("graded_to_tuple includes every equal-size Z-pair") {
    KripkeModel m = make_kripke({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {});
    BisimRelation z = identity_relation(m);
    TupleBisim t = graded_to_tuple(z, m, m, 2);
    REQUIRE(t.family.size() == 2);
    WorldSet ab = WorldSet::full(2);
    bool found = false;
    for (const auto& [x, xp] : t.family[1])
      if (x == ab && xp == ab) found = true;
    CHECK(found);
    CHECK_FALSE(check_tuple_bisim(t, m, m).has_value());
  }
  SUBCASE("round trip through both directions on random pairs") {
    Rng rng(808);
    for (int i = 0; i < 40; ++i) {
      std::size_t nl = 1 + rng.below(4), nr = 1 + rng.below(4);
      KripkeModel l = random_kripke_bounded(rng, nl, {"p"}, 3);
      KripkeModel r = random_kripke_bounded(rng, nr, {"p"}, 3);
      BisimRelation z = largest_graded_bisim(l, r);
      if (z.pairs.empty()) continue;
      TupleBisim t = graded_to_tuple(z, l, r);
      CAPTURE(i);
      CHECK_FALSE(check_tuple_bisim(t, l, r).has_value());
      BisimRelation back = tuple_to_graded(t);
      CHECK(back.pairs == z.pairs);
    }
  }
  SUBCASE("oversized expansions are refused") {
    KripkeModel m = make_kripke(numbered_worlds(8), {}, {});
    BisimRelation z = identity_relation(m);
    CHECK_THROWS_AS(graded_to_tuple(z, m, m, 8, 10), budget_error);
  }
}

TEST_CASE("substitution bridge: graded over R equals monotonic over bullet") {
  Rng rng(111);
  for (int i = 0; i < 4; ++i) {
    std::size_t nl = 1 + rng.below(2), nr = 1 + rng.below(3);
    KripkeModel l = random_kripke_bounded(rng, nl, {"p"}, 2);
    KripkeModel r = random_kripke_bounded(rng, nr, {"p"}, 2);
    NbhdFrame bl(bullet(l)), br(bullet(r));
    for_each_relation(nl, nr, [&](const BisimRelation& z) {
      bool graded_ok = !check_graded_bisim(z, l, r).has_value();
      bool mono_ok = !check_monotonic_bisim(z, bl, br).has_value();
      CAPTURE(i);
      REQUIRE(graded_ok == mono_ok);
    });
  }
}

TEST_CASE("monotonic bisimulation on explicit models") {
  NeighbourhoodModel fp = section6().f_prime;

  SUBCASE("identity passes, override grade 0 included") {
    BisimRelation id = make_relation({{"c", "c"}}, fp.worlds, fp.worlds);
    CHECK_FALSE(check_monotonic_bisim(id, NbhdFrame(fp), NbhdFrame(fp)).has_value());
  }
  SUBCASE("explicit against its own materialization via the fixture source") {
    CoreModel f = section6().f;
    NeighbourhoodModel fe = materialize(f);
    BisimRelation id = make_relation({{"a", "a"}, {"b", "b"}}, f.worlds, fe.worlds);
    CHECK_FALSE(check_monotonic_bisim(id, NbhdFrame(f), NbhdFrame(fe)).has_value());
  }
  SUBCASE("a starved right family is a Forth violation") {
    NeighbourhoodModel l = make_neighbourhood({"a"}, 1, {{"a", 1, {{"a"}}}}, {}, {});
    NeighbourhoodModel r = make_neighbourhood({"b"}, 1, {}, {}, {});
    BisimRelation z = make_relation({{"a", "b"}}, l.worlds, r.worlds);
    BisimVerdict v = check_monotonic_bisim(z, NbhdFrame(l), NbhdFrame(r));
    REQUIRE(v.has_value());
    CHECK(v->clause == BisimViolation::Forth);
    CHECK(v->grade == 1);
    CHECK(set_names(l.worlds, v->witness) == std::vector<std::string>{"a"});
  }
  SUBCASE("a tampered nu_0 without the empty set blocks grade 0") {
    NeighbourhoodModel l = make_neighbourhood({"a"}, 0, {}, {{"a", {{"a"}}}}, {});
    NeighbourhoodModel r = make_neighbourhood({"b"}, 0, {}, {{"b", {{}}}}, {});
    BisimRelation z = make_relation({{"a", "b"}}, l.worlds, r.worlds);
    // Forth holds: the empty set downstairs sits inside every Z-image. Back
    // fails: the empty member of nu'_0(b) needs an empty member upstairs.
    BisimVerdict v = check_monotonic_bisim(z, NbhdFrame(l), NbhdFrame(r));
    REQUIRE(v.has_value());
    CHECK(v->clause == BisimViolation::Back);
    CHECK(v->grade == 0);
    CHECK(v->witness.empty());
  }
}

TEST_CASE("equivalence sampling") {
  SUBCASE("a model against itself agrees") {
    KripkeModel m = figure1_kripke();
    EquivSample s = equiv_sample(m, "w", m, "w", 300, 3, 3, 5);
    CHECK_FALSE(s.distinguishing.has_value());
    CHECK(s.trials_used == 300);
  }
  SUBCASE("the dia-2-p pair is separated within 200 shallow trials") {
    DiaTwoPair d;
    EquivSample s = equiv_sample(d.left, "s", d.right, "s", 200, 1, 2, 9);
    REQUIRE(s.distinguishing.has_value());
    CHECK(s.trials_used <= 200);
    Formula f = *s.distinguishing;
    CHECK(eval(d.left, "s", f) != eval(d.right, "s", f));
  }
}
