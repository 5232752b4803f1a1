#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <variant>
#include <vector>

#include "gml/bisim.hpp"
#include "gml/errors.hpp"
#include "gml/fixtures.hpp"
#include "gml/json_io.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/random_models.hpp"
#include "gml/rng.hpp"

using namespace gml;

namespace {

json reload(const json& j) { return to_json(model_from_json(j)); }

}  // namespace

TEST_CASE("fixture documents have the exact declared shapes") {
  CHECK(to_json(figure1_kripke()) == json::parse(R"({
    "type": "kripke",
    "worlds": ["u1", "u2", "u3", "u4", "w"],
    "rel": [["w", "u1"], ["w", "u2"], ["w", "u3"], ["w", "u4"]],
    "val": {"p": ["u2", "u3", "u4"]}
  })"));

  CHECK(to_json(figure1_graded()) == json::parse(R"({
    "type": "graded",
    "worlds": ["u", "v", "w"],
    "sigma": [["w", "u", 1], ["w", "v", 3]],
    "val": {"p": ["v"]}
  })"));

  CHECK(to_json(section6().f_prime) == json::parse(R"({
    "type": "nbhd",
    "worlds": ["c"],
    "max_grade": 2,
    "nu": [
      {"world": "c", "grade": 1, "sets": [["c"]]},
      {"world": "c", "grade": 2, "sets": [["c"]]}
    ],
    "nu0": [{"world": "c", "sets": [[], ["c"]]}],
    "val": {"p": ["c"]}
  })"));

  CHECK(to_json(section6().f) == json::parse(R"({
    "type": "nbhd-core",
    "worlds": ["a", "b"],
    "core": {"a": ["a", "b"], "b": ["a", "b"]},
    "val": {}
  })"));
}

TEST_CASE("empty collections are elided; absent overrides drop the nu0 key") {
  NeighbourhoodModel m = make_neighbourhood({"a"}, 2, {{"a", 1, {{"a"}}}}, {}, {});
  json j = to_json(m);
  CHECK_FALSE(j.contains("nu0"));
  REQUIRE(j["nu"].size() == 1);  // the empty grade-2 entry is not emitted
  CHECK(j["nu"][0]["grade"] == 1);
}

TEST_CASE("round trips are byte-stable for every type") {
  Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 1 + rng.below(4);
    json j;
    switch (i % 4) {
      case 0: j = to_json(random_kripke(rng, n, {"p", "q"})); break;
      case 1: j = to_json(random_graded(rng, n, {"p"})); break;
      case 2: j = to_json(random_explicit(rng, n, {"p"}, 2)); break;
      default: j = to_json(random_core(rng, n, {"p", "q"})); break;
    }
    CAPTURE(i);
    REQUIRE(reload(j) == j);
    REQUIRE(canonical_dump(reload(j)) == canonical_dump(j));
    // canonical_dump is itself a fixpoint.
    REQUIRE(canonical_dump(json::parse(canonical_dump(j))) == canonical_dump(j));
  }
}

TEST_CASE("omega multiplicities serialize as the string omega") {
  GradedModel m = make_graded({"a", "b"}, {{"a", "b", ExtNat::omega()}}, {});
  json j = to_json(m);
  CHECK(j["sigma"][0][2] == "omega");
  GradedModel back = graded_from_json(j);
  CHECK(back.sigma[0][0].second == ExtNat::omega());
  CHECK(reload(j) == j);
}

TEST_CASE("strict parsing: unknown and missing keys") {
  json good = to_json(figure1_kripke());

  json extra = good;
  extra["bonus"] = 1;
  CHECK_THROWS_AS(model_from_json(extra), input_error);

  json missing = good;
  missing.erase("rel");
  CHECK_THROWS_AS(model_from_json(missing), input_error);

  json untyped = good;
  untyped.erase("type");
  CHECK_THROWS_AS(model_from_json(untyped), input_error);

  json badtype = good;
  badtype["type"] = "modal";
  CHECK_THROWS_AS(model_from_json(badtype), input_error);
}

TEST_CASE("strict parsing: value shapes") {
  CHECK_THROWS_AS(kripke_from_json(json::parse(
                      R"({"type":"kripke","worlds":[],"rel":[],"val":{}})")),
                  input_error);
  CHECK_THROWS_AS(kripke_from_json(json::parse(
                      R"({"type":"kripke","worlds":["a","a"],"rel":[],"val":{}})")),
                  input_error);
  CHECK_THROWS_AS(kripke_from_json(json::parse(
                      R"({"type":"kripke","worlds":["a"],"rel":[["a","b"]],"val":{}})")),
                  input_error);
  // Edges and valuation members have set semantics: repeats are absorbed.
  KripkeModel twice = kripke_from_json(json::parse(
      R"({"type":"kripke","worlds":["a"],"rel":[["a","a"],["a","a"]],"val":{"p":["a","a"]}})"));
  CHECK(twice.rel[0].count() == 1);
  CHECK(twice.val.at("p").count() == 1);
  CHECK(canonical_dump(to_json(twice)) ==
        canonical_dump(json::parse(
            R"({"type":"kripke","worlds":["a"],"rel":[["a","a"]],"val":{"p":["a"]}})")));
  // Valuation letters must be well-formed proposition names.
  CHECK_THROWS_AS(kripke_from_json(json::parse(
                      R"({"type":"kripke","worlds":["a"],"rel":[],"val":{"P":["a"]}})")),
                  input_error);

  // Multiplicities: negative, fractional, and unknown strings all refuse.
  for (const char* bad : {"-1", "1.5", "\"omeag\"", "true"}) {
    std::string doc = std::string(R"({"type":"graded","worlds":["a"],"sigma":[["a","a",)") +
                      bad + R"(]],"val":{}})";
    CAPTURE(bad);
    CHECK_THROWS_AS(graded_from_json(json::parse(doc)), input_error);
  }

  // Explicit models: grade 0 rows belong to nu0; grades above the bound fail.
  CHECK_THROWS_AS(nbhd_from_json(json::parse(
                      R"({"type":"nbhd","worlds":["a"],"max_grade":1,)"
                      R"("nu":[{"world":"a","grade":0,"sets":[[]]}],"val":{}})")),
                  input_error);
  CHECK_THROWS_AS(nbhd_from_json(json::parse(
                      R"({"type":"nbhd","worlds":["a"],"max_grade":1,)"
                      R"("nu":[{"world":"a","grade":2,"sets":[["a"]]}],"val":{}})")),
                  input_error);
  CHECK_THROWS_AS(nbhd_from_json(json::parse(
                      R"({"type":"nbhd","worlds":["a"],"max_grade":-1,"nu":[],"val":{}})")),
                  input_error);

  // Core maps must cover exactly the declared worlds.
  CHECK_THROWS_AS(core_from_json(json::parse(
                      R"({"type":"nbhd-core","worlds":["a"],"core":{"b":[]},"val":{}})")),
                  input_error);
}

TEST_CASE("relations, tuples and maps resolve against world lists") {
  KripkeModel l = figure1_kripke();
  KripkeModel r = figure1_kripke();

  SUBCASE("relation") {
    BisimRelation z = relation_from_json(json::parse(R"({"pairs":[["w","u1"],["u1","w"]]})"),
                                         l.worlds, r.worlds);
    CHECK(z.pairs.size() == 2);
    json back = relation_to_json(z, l.worlds, r.worlds);
    CHECK(relation_from_json(back, l.worlds, r.worlds).pairs == z.pairs);
    CHECK_THROWS_AS(relation_from_json(json::parse(R"({"pairs":[["w","zz"]]})"),
                                       l.worlds, r.worlds),
                    input_error);
    CHECK_THROWS_AS(relation_from_json(json::parse(R"({"couples":[]})"), l.worlds, r.worlds),
                    input_error);
  }
  SUBCASE("tuple family") {
    json doc = json::parse(
        R"({"family":[{"grade":1,"pairs":[[["w"],["w"]]]},)"
        R"({"grade":2,"pairs":[[["u1","u2"],["u1","u2"]]]}]})");
    TupleBisim t = tuple_from_json(doc, l.worlds, r.worlds);
    REQUIRE(t.family.size() == 2);
    CHECK(t.family[0].size() == 1);
    CHECK(t.family[1].size() == 1);
    json back = tuple_to_json(t, l.worlds, r.worlds);
    CHECK(tuple_to_json(tuple_from_json(back, l.worlds, r.worlds), l.worlds, r.worlds) == back);
    CHECK_THROWS_AS(tuple_from_json(json::parse(R"({"family":[{"grade":0,"pairs":[]}]})"),
                                    l.worlds, r.worlds),
                    input_error);
  }
  SUBCASE("world map") {
    Section6 s = section6();
    WorldMap f = map_from_json(json::parse(R"({"map":{"a":"c","b":"c"}})"),
                               s.f.worlds, s.f_prime.worlds);
    CHECK(f.to == std::vector<int>{0, 0});
    CHECK_THROWS_AS(map_from_json(json::parse(R"({"map":{"a":"c"}})"),
                                  s.f.worlds, s.f_prime.worlds),
                    input_error);
    CHECK_THROWS_AS(map_from_json(json::parse(R"({"map":{"a":"c","b":"c","x":"c"}})"),
                                  s.f.worlds, s.f_prime.worlds),
                    input_error);
  }
}

TEST_CASE("load_json_file reports parse failures as input errors") {
  CHECK_THROWS_AS(load_json_file("/nonexistent/path/model.json"), input_error);
}

TEST_CASE("canonical_dump emits two-space indent with trailing newline") {
  json j = json::parse(R"({"b":1,"a":[1,2]})");
  CHECK(canonical_dump(j) == "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
}
