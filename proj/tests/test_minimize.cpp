#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "gml/errors.hpp"
#include "gml/fixtures.hpp"
#include "gml/formula.hpp"
#include "gml/kripke.hpp"
#include "gml/minimize.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/worlds.hpp"

using namespace gml;

TEST_CASE("remove_world on a kripke model reindexes edges and valuation") {
  KripkeModel m = figure1_kripke();
  KripkeModel r = remove_world(m, require_world(m.worlds, "u2"));
  CHECK(r.worlds == std::vector<std::string>{"u1", "u3", "u4", "w"});
  int w = require_world(r.worlds, "w");
  CHECK(r.rel[static_cast<std::size_t>(w)].count() == 3);
  CHECK(set_names(r.worlds, r.val.at("p")) == std::vector<std::string>{"u3", "u4"});
  CHECK(eval(r, "w", parse("(dia 2 p)")));
  CHECK_FALSE(eval(r, "w", parse("(dia 3 p)")));
}

TEST_CASE("remove_world on a graded model drops the world's entries") {
  GradedModel m = figure1_graded();
  GradedModel r = remove_world(m, require_world(m.worlds, "u"));
  CHECK(r.worlds == std::vector<std::string>{"v", "w"});
  CHECK(eval(r, "w", parse("(dia 3 p)")));
  CHECK_FALSE(eval(r, "w", parse("(dia 4 top)")));  // the sigma-1 edge is gone
}

TEST_CASE("remove_world on explicit models drops sets that mention the world") {
  NeighbourhoodModel m = make_neighbourhood(
      {"a", "b"}, 1, {{"a", 1, {{"a"}, {"a", "b"}, {"b"}}}}, {}, {{"p", {"b"}}});
  NeighbourhoodModel r = remove_world(m, 1);  // drop b
  CHECK(r.worlds == std::vector<std::string>{"a"});
  REQUIRE(r.nu[0][0].size() == 1);  // only {a} survives
  CHECK(set_names(r.worlds, r.nu[0][0][0]) == std::vector<std::string>{"a"});
  CHECK(r.val.at("p").empty());
}

TEST_CASE("remove_world on core models shrinks the cores") {
  CoreModel m = figure1_nbhd();
  CoreModel r = remove_world(m, require_world(m.worlds, "u3"));
  int w = require_world(r.worlds, "w");
  CHECK(r.core[static_cast<std::size_t>(w)].count() == 3);
  CHECK_FALSE(eval(r, "w", parse("(dia 3 p)")));
}

TEST_CASE("the last world cannot be removed") {
  KripkeModel m = make_kripke({"a"}, {}, {});
  CHECK_THROWS_AS(remove_world(m, 0), input_error);
}

TEST_CASE("greedy_remove_worlds reaches a local minimum") {
  KripkeModel m = figure1_kripke();
  // Failure predicate: w still has at least two p-successors.
  auto fails = [](const KripkeModel& k) {
    int w = find_world(k.worlds, "w");
    if (w < 0) return false;
    return eval(k, "w", parse("(dia 2 p)"));
  };
  REQUIRE(fails(m));
  KripkeModel r = greedy_remove_worlds(m, fails);
  CHECK(fails(r));
  CHECK(r.worlds.size() == 3);  // w and two p-successors
  // No single further removal keeps the predicate failing.
  for (std::size_t w = 0; w < r.worlds.size(); ++w)
    CHECK_FALSE(fails(remove_world(r, static_cast<int>(w))));
}

TEST_CASE("dia surgery walks nodes in preorder") {
  Formula f = parse("(or (dia 3 p) (not (dia 5 q)))");
  CHECK(count_dias(f) == 2);
  std::size_t c0 = 0, c1 = 0;
  CHECK(dia_grade_at(f, 0, c0) == 3);
  CHECK(dia_grade_at(f, 1, c1) == 5);
  CHECK(with_dia_grade(f, 1, 2) == parse("(or (dia 3 p) (not (dia 2 q)))"));
  CHECK(with_dia_grade(f, 0, 0) == parse("(or (dia 0 p) (not (dia 5 q)))"));
}

TEST_CASE("greedy_reduce_grades lowers grades to the predicate's floor") {
  SUBCASE("free fall to zero when nothing constrains the grade") {
    Formula f = parse("(dia 9 p)");
    Formula r = greedy_reduce_grades(f, [](const Formula&) { return true; });
    CHECK(r == parse("(dia 0 p)"));
  }
  SUBCASE("stepwise descent stops at the floor") {
    // Failing means: the formula still distinguishes w from u1 on figure 1,
    // which needs grade >= 1 but survives any grade in 1..3.
    KripkeModel m = figure1_kripke();
    auto fails = [&](const Formula& g) { return eval(m, "w", g) != eval(m, "u1", g); };
    Formula f = parse("(dia 3 p)");
    REQUIRE(fails(f));
    Formula r = greedy_reduce_grades(f, fails);
    CHECK(r == parse("(dia 1 p)"));
  }
  SUBCASE("each dia is lowered independently") {
    KripkeModel m = figure1_kripke();
    auto fails = [&](const Formula& g) { return eval(m, "w", g); };
    // Both conjuncts must stay true at w: grades can drop to 0 each.
    Formula f = parse("(and (dia 2 p) (dia 3 p))");
    Formula r = greedy_reduce_grades(f, fails);
    CHECK(r == parse("(and (dia 0 p) (dia 0 p))"));
  }
}
