#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gml {

// Core connectives of the graded modal language. Derived forms (and, imp,
// iff, box, dia!) are desugared at construction time and never stored.
enum class FormulaKind : std::uint8_t { Atom, Top, Bot, Neg, Or, Dia };

// Immutable formula with shared subterms. Equality is structural.
class Formula {
 public:
  Formula() : Formula(top()) {}

  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula disj(Formula a, Formula b);
  static Formula dia(std::uint64_t grade, Formula f);

  // Derived forms, stored desugared:
  //   and(a,b)     = not(or(not a, not b))
  //   imp(a,b)     = or(not a, b)
  //   iff(a,b)     = and(imp(a,b), imp(b,a))
  //   box_n(f)     = not(dia_n(not f))
  //   dia_exact_n  = and(dia_n f, not(dia_{n+1} f))
  static Formula conj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(std::uint64_t grade, Formula f);
  static Formula dia_exact(std::uint64_t grade, Formula f);

  FormulaKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }      // Atom
  std::uint64_t grade() const { return node_->grade; }         // Dia
  Formula child() const { return Formula(node_->a); }          // Neg, Dia
  Formula left() const { return Formula(node_->a); }           // Or
  Formula right() const { return Formula(node_->b); }          // Or

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node {
    FormulaKind kind;
    std::uint64_t grade = 0;
    std::string name;
    std::shared_ptr<const Node> a, b;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Number of connectives (not, or, dia nodes); atoms and constants count 0.
std::uint64_t complexity(const Formula& f);

// Largest grade on any dia node; 0 if there is none.
std::uint64_t max_grade(const Formula& f);

// Sorted, duplicate-free proposition letters. Metavariables ("?x") are
// reported separately by metavariables().
std::vector<std::string> atoms(const Formula& f);
std::vector<std::string> metavariables(const Formula& f);
bool has_metavariables(const Formula& f);

// Well-formed proposition letter: [a-z][a-z0-9_]*, not an operator word.
bool is_atom_name(std::string_view s);

// S-expression printer; prints only core connectives, so parse(print(f)) == f.
std::string print(const Formula& f);

// S-expression parser. Grammar:
//   form ::= atom | "top" | "bot" | "(not form)" | "(or form form)"
//          | "(and form form)" | "(imp form form)" | "(iff form form)"
//          | "(dia nat form)" | "(box nat form)" | "(dia! nat form)"
//   atom ::= [a-z][a-z0-9_]*   (operator words are reserved)
// Grades above 2^32-1 are rejected. Throws parse_error with a byte offset.
Formula parse(std::string_view text);

// Same grammar, but additionally accepts metavariable leaves "?name".
Formula parse_schema(std::string_view text);

// Depth-bounded random formula over the given letters; deterministic per
// seed. Grades are drawn uniformly from 0..grade_bound.
Formula random_formula(std::uint64_t seed, unsigned depth, std::uint64_t grade_bound,
                       const std::vector<std::string>& letters);

class Rng;
Formula random_formula(Rng& rng, unsigned depth, std::uint64_t grade_bound,
                       const std::vector<std::string>& letters);

}  // namespace gml
