#include "gml/fixtures.hpp"

namespace gml {

KripkeModel figure1_kripke() {
  return make_kripke({"w", "u1", "u2", "u3", "u4"},
                     {{"w", "u1"}, {"w", "u2"}, {"w", "u3"}, {"w", "u4"}},
                     {{"p", {"u2", "u3", "u4"}}});
}

GradedModel figure1_graded() {
  return make_graded({"w", "u", "v"}, {{"w", "u", ExtNat(1)}, {"w", "v", ExtNat(3)}},
                     {{"p", {"v"}}});
}

CoreModel figure1_nbhd() { return bullet(figure1_kripke()); }

Section6 section6() {
  Section6 s;
  s.f = make_core({"a", "b"}, {{"a", {"a", "b"}}, {"b", {"a", "b"}}}, {});
  s.f_prime = make_neighbourhood({"c"}, 2,
                                 {{"c", 1, {{"c"}}}, {"c", 2, {{"c"}}}},
                                 {{"c", {{}, {"c"}}}}, {{"p", {"c"}}});
  s.map = make_world_map({{"a", "c"}, {"b", "c"}}, s.f.worlds, s.f_prime.worlds);
  return s;
}

}  // namespace gml
