#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gml/errors.hpp"
#include "gml/formula.hpp"
#include "gml/kripke.hpp"
#include "gml/validity.hpp"
#include "gml/worldset.hpp"

namespace gml {

// Natural number extended with omega. omega is absorbing for addition and
// larger than every natural; sums of naturals are exact (checked).
class ExtNat {
 public:
  ExtNat() = default;
  ExtNat(std::uint64_t v) : value_(v) {}
  static ExtNat omega() {
    ExtNat e;
    e.omega_ = true;
    return e;
  }

  bool is_omega() const { return omega_; }
  std::uint64_t value() const { return value_; }  // meaningless when omega

  ExtNat operator+(const ExtNat& o) const {
    if (omega_ || o.omega_) return omega();
    if (value_ > UINT64_MAX - o.value_) throw budget_error("multiplicity sum overflow");
    return ExtNat(value_ + o.value_);
  }

  bool operator==(const ExtNat& o) const {
    return omega_ == o.omega_ && (omega_ || value_ == o.value_);
  }

  // n <= mass comparison against a plain natural.
  bool at_least(std::uint64_t n) const { return omega_ || value_ >= n; }

 private:
  std::uint64_t value_ = 0;
  bool omega_ = false;
};

// Multiplicity-labelled model: sigma(w,u) in N union {omega}. Rows store only
// nonzero entries, sorted by target index.
struct GradedModel {
  std::vector<std::string> worlds;  // sorted, duplicate-free
  std::vector<std::vector<std::pair<int, ExtNat>>> sigma;
  Valuation val;
};

GradedModel make_graded(
    std::vector<std::string> worlds,
    const std::vector<std::tuple<std::string, std::string, ExtNat>>& entries,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& val);

// Total multiplicity sigma(w, X) = sum over u in X of sigma(w, u); empty sets
// weigh 0 and omega absorbs.
ExtNat sigma_mass(const GradedModel& m, int w, const WorldSet& x);

// dia_n psi holds at w iff sigma(w, truth set of psi) >= n. Over finite
// models this equals the subset-existential reading (some finite X inside the
// truth set with sigma(w,X) >= n) because sigma(w,-) is monotone under
// inclusion; tests check that against brute-force subset enumeration.
WorldSet truth_set(const GradedModel& m, const Formula& f);
WorldSet truth_set_with(const GradedModel& m, const Formula& f, const Valuation& val);
bool eval(const GradedModel& m, const std::string& world, const Formula& f);

// Edge-to-multiplicity translation: sigma(w,u) = 1 iff w R u, else 0.
// Truth of every formula is preserved world by world.
GradedModel kripke_to_graded(const KripkeModel& m);

// Truncated copy unfolding: worlds (w,i) for i = 0..cap named "w#i", with an
// edge (w,i) -> (u,j) iff min(sigma(w,u), cap) >= j >= 1; the valuation lifts
// through the first component. Truth is preserved at every copy for formulas
// whose max_grade is <= cap.
KripkeModel graded_to_kripke(const GradedModel& m, std::uint64_t cap);

}  // namespace gml
