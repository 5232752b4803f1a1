#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gml/graded.hpp"
#include "gml/kripke.hpp"
#include "gml/neighbourhood.hpp"
#include "gml/rng.hpp"

namespace gml {

// Deterministic model generators for property tests and fuzzing. Worlds are
// named w0, w1, ... and every construction is a pure function of the Rng
// stream, so a seed pins the whole model down.

std::vector<std::string> numbered_worlds(std::size_t n);

// Each edge present independently with probability num/den.
KripkeModel random_kripke(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters,
                          std::uint64_t edge_num = 1, std::uint64_t edge_den = 2);

// Out-degree of every world drawn uniformly from 0..max_out.
KripkeModel random_kripke_bounded(Rng& rng, std::size_t n_worlds,
                                  const std::vector<std::string>& letters, std::size_t max_out);

// Multiplicities drawn from 0..max_mult, with an omega chance per edge.
GradedModel random_graded(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters,
                          std::uint64_t max_mult = 3, std::uint64_t omega_num = 1,
                          std::uint64_t omega_den = 8);

CoreModel random_core(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters);

// Explicit neighbourhood model with monotone collections: per world and
// grade, the up-closure of a few random seed sets. About half the draws
// leave the grade-0 family at its powerset default.
NeighbourhoodModel random_explicit(Rng& rng, std::size_t n_worlds,
                                   const std::vector<std::string>& letters,
                                   std::uint64_t max_grade);

// Explicit model that is a graded frame except for `flips` random set
// insertions or deletions (flips = 0 gives a materialized random core).
NeighbourhoodModel random_perturbed_core(Rng& rng, std::size_t n_worlds,
                                         const std::vector<std::string>& letters,
                                         std::uint64_t max_grade, std::size_t flips);

}  // namespace gml
