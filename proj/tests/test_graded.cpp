#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "gml/errors.hpp"
#include "gml/fixtures.hpp"
#include "gml/formula.hpp"
#include "gml/graded.hpp"
#include "gml/kripke.hpp"
#include "gml/random_models.hpp"
#include "gml/rng.hpp"
#include "gml/schema.hpp"
#include "gml/validity.hpp"
#include "gml/worlds.hpp"

using namespace gml;

namespace {

// Literal reading of the graded clause: dia_n psi holds at w iff some subset
// of the truth set of psi weighs at least n. Exponential in |W|; the oracle
// the production shortcut (mass of the whole truth set) is tested against.
WorldSet oracle_truth_set(const GradedModel& m, const Formula& f) {
  const std::size_t n_worlds = m.worlds.size();
  auto dia = [&](std::uint64_t grade, const WorldSet& child) {
    std::vector<int> pool = child.members();
    WorldSet out(n_worlds);
    for (std::size_t w = 0; w < n_worlds; ++w) {
      bool found = false;
      for (std::uint64_t mask = 0; mask < (1ull << pool.size()) && !found; ++mask) {
        WorldSet x(n_worlds);
        for (std::size_t b = 0; b < pool.size(); ++b)
          if (mask & (1ull << b)) x.set(static_cast<std::size_t>(pool[b]));
        if (sigma_mass(m, static_cast<int>(w), x).at_least(grade)) found = true;
      }
      if (found) out.set(w);
    }
    return out;
  };
  return truth_set_generic(n_worlds, m.val, f, dia);
}

}  // namespace

TEST_CASE("extended naturals") {
  CHECK(ExtNat(3) + ExtNat(4) == ExtNat(7));
  CHECK(ExtNat(0).at_least(0));
  CHECK_FALSE(ExtNat(0).at_least(1));
  CHECK(ExtNat(5).at_least(5));

  SUBCASE("omega absorbs addition and dominates every natural") {
    CHECK(ExtNat::omega() + ExtNat(9) == ExtNat::omega());
    CHECK(ExtNat(9) + ExtNat::omega() == ExtNat::omega());
    CHECK(ExtNat::omega().at_least(UINT64_MAX));
    CHECK(ExtNat::omega() != ExtNat(0));
  }
  SUBCASE("finite overflow is refused, not wrapped") {
    CHECK_THROWS_AS(ExtNat(UINT64_MAX) + ExtNat(1), budget_error);
  }
}

TEST_CASE("sigma_mass sums multiplicities over a set") {
  GradedModel m = figure1_graded();
  const std::size_t n = m.worlds.size();
  int w = require_world(m.worlds, "w");
  int u = require_world(m.worlds, "u");
  int v = require_world(m.worlds, "v");

  CHECK(sigma_mass(m, w, WorldSet(n)) == ExtNat(0));
  WorldSet uv(n);
  uv.set(static_cast<std::size_t>(u));
  uv.set(static_cast<std::size_t>(v));
  CHECK(sigma_mass(m, w, uv) == ExtNat(4));  // 1 + 3

  SUBCASE("an omega edge absorbs the sum") {
    GradedModel o = make_graded({"a", "b", "c"},
                                {{"a", "b", ExtNat::omega()}, {"a", "c", ExtNat(2)}}, {});
    CHECK(sigma_mass(o, 0, WorldSet::full(3)) == ExtNat::omega());
  }
}

TEST_CASE("graded evaluation on the figure1 model") {
  GradedModel m = figure1_graded();
  CHECK(eval(m, "w", parse("(dia 3 p)")));
  CHECK(eval(m, "w", parse("(dia 4 top)")));       // total mass 1 + 3
  CHECK_FALSE(eval(m, "w", parse("(dia 5 top)")));
  CHECK_FALSE(eval(m, "w", parse("(dia 4 p)")));
  CHECK(eval(m, "w", parse("(dia 0 bot)")));
  CHECK_FALSE(eval(m, "w", parse("(dia 1 bot)")));
  CHECK_THROWS_AS(eval(m, "nope", parse("p")), input_error);
}

TEST_CASE("omega edges satisfy arbitrarily large grades") {
  GradedModel m = make_graded({"u", "w"}, {{"w", "u", ExtNat::omega()}}, {});
  CHECK(eval(m, "w", parse("(dia 1000000 top)")));
}

TEST_CASE("zero sigma supports nothing") {
  GradedModel m = make_graded({"a", "b"}, {}, {});
  CHECK_FALSE(eval(m, "a", parse("(dia 1 top)")));
  // Entries with multiplicity zero are normalized away at construction.
  GradedModel z = make_graded({"a", "b"}, {{"a", "b", ExtNat(0)}}, {});
  for (const auto& row : z.sigma) CHECK(row.empty());
}

TEST_CASE("make_graded validates input") {
  CHECK_THROWS_AS(make_graded({"a"}, {{"a", "x", ExtNat(1)}}, {}), input_error);
  CHECK_THROWS_AS(make_graded({"a", "b"},
                              {{"a", "b", ExtNat(1)}, {"a", "b", ExtNat(2)}}, {}),
                  input_error);
}

TEST_CASE("full-truth-set shortcut matches the subset-existential oracle") {
  Rng rng(505);
  const std::vector<std::string> letters = {"p", "q"};
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng.below(5);
    GradedModel m = random_graded(rng, n, letters, 4);
    Formula f = random_formula(rng, 3, 4, letters);
    CAPTURE(i);
    CAPTURE(print(f));
    REQUIRE(truth_set(m, f) == oracle_truth_set(m, f));
  }
}

TEST_CASE("diamond truth is antitone in the grade") {
  Rng rng(66);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + rng.below(5);
    GradedModel m = random_graded(rng, n, {"p"});
    WorldSet p_now = truth_set(m, parse("(dia 3 p)"));
    WorldSet p_lower = truth_set(m, parse("(dia 2 p)"));
    CAPTURE(i);
    CHECK(p_now.is_subset_of(p_lower));
  }
}

TEST_CASE("graded frame validity") {
  GradedModel m = figure1_graded();
  Formula ax7 = instantiate(Schema{ax7_body(), {{"?phi", Formula::atom("p")},
                                                {"?psi", Formula::atom("q")}}});
  CHECK(frame_validity(m, ax7).valid());
  CHECK(frame_validity(m, parse("(iff (dia 2 bot) bot)")).valid());

  GradedModel still = make_graded({"a", "b"}, {}, {});
  ValidityVerdict v = frame_validity(still, parse("(dia 1 p)"));
  CHECK_FALSE(v.valid());

  SUBCASE("ax7 instances hold on 100 random graded frames") {
    Rng rng(1234);
    for (int i = 0; i < 100; ++i) {
      std::size_t n = 1 + rng.below(4);
      GradedModel g = random_graded(rng, n, {});
      CAPTURE(i);
      CHECK(frame_validity(g, ax7).valid());
    }
  }
}

TEST_CASE("graded_to_kripke copy unfolding") {
  SUBCASE("zero sigma gives an edgeless truncation") {
    GradedModel m = make_graded({"a", "b"}, {}, {});
    KripkeModel k = graded_to_kripke(m, 2);
    CHECK(k.worlds.size() == 6);  // 2 worlds x copies 0..2
    for (const auto& row : k.rel) CHECK(row.empty());
  }
  SUBCASE("figure1 at cap 3: (w,0) reaches 1 + 3 copies") {
    GradedModel m = figure1_graded();
    KripkeModel k = graded_to_kripke(m, 3);
    int w0 = require_world(k.worlds, "w#0");
    CHECK(k.rel[static_cast<std::size_t>(w0)].count() == 4);
    // min(sigma,cap) >= j >= 1: u contributes u#1; v contributes v#1..v#3.
    for (const char* succ : {"u#1", "v#1", "v#2", "v#3"})
      CHECK(k.rel[static_cast<std::size_t>(w0)].test(
          static_cast<std::size_t>(require_world(k.worlds, succ))));
  }
  SUBCASE("an omega edge truncates to the cap") {
    GradedModel m = make_graded({"u", "w"}, {{"w", "u", ExtNat::omega()}}, {});
    KripkeModel k = graded_to_kripke(m, 2);
    int w0 = require_world(k.worlds, "w#0");
    CHECK(k.rel[static_cast<std::size_t>(w0)].count() == 2);  // u#1, u#2
  }
  SUBCASE("every copy of a world satisfies the same formulas") {
    GradedModel m = figure1_graded();
    KripkeModel k = graded_to_kripke(m, 3);
    for (const char* f : {"(dia 3 p)", "(dia 4 p)", "(dia 1 (not p))", "(dia 2 p)"}) {
      Formula g = parse(f);
      bool at0 = eval(k, "w#0", g);
      for (int i = 1; i <= 3; ++i) {
        CHECK(eval(k, "w#" + std::to_string(i), g) == at0);
      }
    }
  }
  SUBCASE("oversized unfoldings are refused") {
    GradedModel m = figure1_graded();
    CHECK_THROWS_AS(graded_to_kripke(m, (1ull << 40)), budget_error);
  }
}

TEST_CASE("truncation preserves truth for formulas within the cap") {
  Rng rng(909);
  const std::vector<std::string> letters = {"p", "q"};
  const std::uint64_t cap = 4;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + rng.below(4);
    GradedModel m = random_graded(rng, n, letters);
    Formula f = random_formula(rng, 3, cap, letters);
    KripkeModel k = graded_to_kripke(m, cap);
    CAPTURE(i);
    CAPTURE(print(f));
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
      bool direct = truth_set(m, f).test(w);
      for (std::uint64_t copy = 0; copy <= cap; ++copy) {
        std::string name = m.worlds[w] + "#" + std::to_string(copy);
        REQUIRE(eval(k, name, f) == direct);
      }
    }
  }
}
