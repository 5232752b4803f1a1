#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gml/formula.hpp"

namespace gml {

// A formula body whose "?"-prefixed atoms are metavariables, together with a
// substitution. instantiate() replaces every metavariable uniformly.
struct Schema {
  Formula body;
  std::map<std::string, Formula> subst;  // "?phi" -> replacement
};

// Throws input_error on a metavariable left unbound by the substitution.
Formula instantiate(const Schema& schema);

// Axiom bodies of the graded system, over metavariables ?phi / ?psi.
// Grade parameters are baked into the body; formula slots stay open.
Formula ax2_body();                                // dia_0 ?phi <-> top
Formula ax3_body(std::uint64_t n);                 // dia_n bot <-> bot        (n >= 1)
Formula ax4_body(std::uint64_t n);                 // dia_{n+1} ?phi -> dia_n ?phi
Formula ax5_body(std::uint64_t n);                 // box(?phi -> ?psi) -> (dia_n ?phi -> dia_n ?psi)
Formula ax6_body(std::uint64_t m, std::uint64_t n);// not dia(?phi & ?psi) & dia!_m ?phi & dia!_n ?psi
                                                   //   -> dia!_{m+n}(?phi | ?psi)
Formula ax7_body();                                // dia(?phi | ?psi) <-> dia ?phi | dia ?psi

// Separation formula: valid on graded neighbourhood frames, falsifiable on
// merely monotonic ones.  (dia_n ?phi & dia_n not ?phi) -> (dia_n ?psi | dia_n not ?psi)
Formula separation_body(std::uint64_t n);

}  // namespace gml
