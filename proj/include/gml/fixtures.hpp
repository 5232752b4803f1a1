#pragma once

#include "gml/graded.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"

namespace gml {

// Built-in example models used across the tests and exposed by the CLI.

// Five worlds u1..u4, w; w sees all four u's; p holds at u2, u3, u4.
KripkeModel figure1_kripke();

// Three worlds u, v, w; sigma(w,u) = 1, sigma(w,v) = 3; p holds at v.
GradedModel figure1_graded();

// The neighbourhood companion of figure1_kripke: core(w) = successors of w.
CoreModel figure1_nbhd();

// A surjective bounded morphism whose source frame is graded and whose
// target is not: both worlds of F share the core {a,b}; F' is a single
// reflexive-looking world c with nu_1 = nu_2 = {{c}} and nu_0 = {{}, {c}}.
struct Section6 {
  CoreModel f;
  NeighbourhoodModel f_prime;
  WorldMap map;  // a -> c, b -> c
};
Section6 section6();

}  // namespace gml
