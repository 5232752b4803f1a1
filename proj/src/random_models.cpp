#include "gml/random_models.hpp"

#include <algorithm>
#include <numeric>

#include "gml/errors.hpp"

namespace gml {
namespace {

Valuation random_valuation(Rng& rng, std::size_t n, const std::vector<std::string>& letters) {
  Valuation val;
  for (const auto& letter : letters) val.emplace(letter, WorldSet::from_bits(n, rng.next()));
  return val;
}

// Ascending enumeration of all subsets that contain some seed; yields the
// canonical sorted duplicate-free collection directly.
std::vector<WorldSet> up_closure(std::size_t n, const std::vector<std::uint64_t>& seeds) {
  std::vector<WorldSet> out;
  const std::uint64_t full = n >= 64 ? ~0ull : (1ull << n) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    for (std::uint64_t seed : seeds)
      if ((mask & seed & full) == (seed & full)) {
        out.push_back(WorldSet::from_bits(n, mask));
        break;
      }
    if (mask == full) break;
  }
  return out;
}

}  // namespace

std::vector<std::string> numbered_worlds(std::size_t n) {
  std::size_t width = 1;
  for (std::size_t top = 10; top < n; top *= 10) ++width;
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.push_back("w" + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

KripkeModel random_kripke(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters,
                          std::uint64_t edge_num, std::uint64_t edge_den) {
  KripkeModel m;
  m.worlds = numbered_worlds(n_worlds);
  m.rel.assign(n_worlds, WorldSet(n_worlds));
  for (std::size_t w = 0; w < n_worlds; ++w)
    for (std::size_t u = 0; u < n_worlds; ++u)
      if (rng.chance(edge_num, edge_den)) m.rel[w].set(static_cast<int>(u));
  m.val = random_valuation(rng, n_worlds, letters);
  return m;
}

KripkeModel random_kripke_bounded(Rng& rng, std::size_t n_worlds,
                                  const std::vector<std::string>& letters, std::size_t max_out) {
  KripkeModel m;
  m.worlds = numbered_worlds(n_worlds);
  m.rel.assign(n_worlds, WorldSet(n_worlds));
  std::vector<int> pool(n_worlds);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t w = 0; w < n_worlds; ++w) {
    const std::size_t degree = std::min(n_worlds, rng.below(max_out + 1));
    for (std::size_t i = 0; i < degree; ++i) {
      std::swap(pool[i], pool[i + rng.below(n_worlds - i)]);
      m.rel[w].set(pool[i]);
    }
  }
  m.val = random_valuation(rng, n_worlds, letters);
  return m;
}

GradedModel random_graded(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters,
                          std::uint64_t max_mult, std::uint64_t omega_num,
                          std::uint64_t omega_den) {
  GradedModel m;
  m.worlds = numbered_worlds(n_worlds);
  m.sigma.resize(n_worlds);
  max_mult = std::max<std::uint64_t>(1, max_mult);
  for (std::size_t w = 0; w < n_worlds; ++w)
    for (std::size_t u = 0; u < n_worlds; ++u) {
      if (!rng.chance(1, 2)) continue;
      ExtNat mult = rng.chance(omega_num, omega_den) ? ExtNat::omega()
                                                     : ExtNat(1 + rng.below(max_mult));
      m.sigma[w].emplace_back(static_cast<int>(u), mult);
    }
  m.val = random_valuation(rng, n_worlds, letters);
  return m;
}

CoreModel random_core(Rng& rng, std::size_t n_worlds, const std::vector<std::string>& letters) {
  CoreModel m;
  m.worlds = numbered_worlds(n_worlds);
  for (std::size_t w = 0; w < n_worlds; ++w)
    m.core.push_back(WorldSet::from_bits(n_worlds, rng.next()));
  m.val = random_valuation(rng, n_worlds, letters);
  return m;
}

NeighbourhoodModel random_explicit(Rng& rng, std::size_t n_worlds,
                                   const std::vector<std::string>& letters,
                                   std::uint64_t max_grade) {
  if (n_worlds > 16) throw input_error("explicit models are capped at 16 worlds");
  NeighbourhoodModel m;
  m.worlds = numbered_worlds(n_worlds);
  m.max_grade = max_grade;
  m.nu.assign(n_worlds, std::vector<std::vector<WorldSet>>(max_grade));
  m.nu0.assign(n_worlds, std::nullopt);
  const std::uint64_t full = (1ull << n_worlds) - 1;
  for (std::size_t w = 0; w < n_worlds; ++w) {
    for (std::uint64_t g = 1; g <= max_grade; ++g) {
      std::vector<std::uint64_t> seeds;
      const std::size_t k = rng.below(3);
      for (std::size_t i = 0; i < k; ++i) seeds.push_back(rng.next() & full);
      m.nu[w][g - 1] = up_closure(n_worlds, seeds);
    }
    if (rng.chance(1, 2)) continue;  // keep the powerset default
    std::vector<WorldSet> over;
    const bool near_full = rng.chance(1, 2);
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      if (near_full && !rng.chance(7, 8)) continue;
      over.push_back(WorldSet::from_bits(n_worlds, mask));
      if (mask == full) break;
    }
    m.nu0[w] = std::move(over);
  }
  m.val = random_valuation(rng, n_worlds, letters);
  return m;
}

NeighbourhoodModel random_perturbed_core(Rng& rng, std::size_t n_worlds,
                                         const std::vector<std::string>& letters,
                                         std::uint64_t max_grade, std::size_t flips) {
  CoreModel base = random_core(rng, n_worlds, letters);
  NeighbourhoodModel m = materialize(base, max_grade);
  if (max_grade == 0) return m;
  const std::uint64_t full = (1ull << n_worlds) - 1;
  for (std::size_t i = 0; i < flips; ++i) {
    const std::size_t w = rng.below(n_worlds);
    const std::uint64_t g = 1 + rng.below(max_grade);
    const WorldSet x = WorldSet::from_bits(n_worlds, rng.next() & full);
    auto& coll = m.nu[w][g - 1];
    auto it = std::lower_bound(coll.begin(), coll.end(), x);
    if (it != coll.end() && *it == x)
      coll.erase(it);
    else
      coll.insert(it, x);
  }
  return m;
}

}  // namespace gml
