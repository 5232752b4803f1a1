#include "gml/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "gml/errors.hpp"
#include "gml/rng.hpp"

namespace gml {

namespace {
constexpr std::uint64_t kGradeMax = 0xffffffffull;  // largest parseable grade
}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Top;
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::bot() {
  static const Formula b = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Bot;
    return Formula(std::move(n));
  }();
  return b;
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Neg;
  n->a = f.node_;
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->a = a.node_;
  n->b = b.node_;
  return Formula(std::move(n));
}

Formula Formula::dia(std::uint64_t grade, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Dia;
  n->grade = grade;
  n->a = f.node_;
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) { return neg(disj(neg(a), neg(b))); }
Formula Formula::imp(Formula a, Formula b) { return disj(neg(a), b); }
Formula Formula::iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }
Formula Formula::box(std::uint64_t grade, Formula f) { return neg(dia(grade, neg(f))); }
Formula Formula::dia_exact(std::uint64_t grade, Formula f) {
  return conj(dia(grade, f), neg(dia(grade + 1, f)));
}

bool Formula::operator==(const Formula& o) const {
  const Node* x = node_.get();
  const Node* y = o.node_.get();
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case FormulaKind::Atom:
      return x->name == y->name;
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Neg:
      return Formula(x->a) == Formula(y->a);
    case FormulaKind::Or:
      return Formula(x->a) == Formula(y->a) && Formula(x->b) == Formula(y->b);
    case FormulaKind::Dia:
      return x->grade == y->grade && Formula(x->a) == Formula(y->a);
  }
  return false;
}

std::uint64_t complexity(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Neg:
    case FormulaKind::Dia:
      return 1 + complexity(f.child());
    case FormulaKind::Or:
      return 1 + complexity(f.left()) + complexity(f.right());
  }
  return 0;
}

std::uint64_t max_grade(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Neg:
      return max_grade(f.child());
    case FormulaKind::Dia:
      return std::max(f.grade(), max_grade(f.child()));
    case FormulaKind::Or:
      return std::max(max_grade(f.left()), max_grade(f.right()));
  }
  return 0;
}

namespace {

void collect_leaves(const Formula& f, std::set<std::string>& letters,
                    std::set<std::string>& metas) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (!f.name().empty() && f.name()[0] == '?')
        metas.insert(f.name());
      else
        letters.insert(f.name());
      return;
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return;
    case FormulaKind::Neg:
    case FormulaKind::Dia:
      collect_leaves(f.child(), letters, metas);
      return;
    case FormulaKind::Or:
      collect_leaves(f.left(), letters, metas);
      collect_leaves(f.right(), letters, metas);
      return;
  }
}

}  // namespace

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> letters, metas;
  collect_leaves(f, letters, metas);
  return {letters.begin(), letters.end()};
}

std::vector<std::string> metavariables(const Formula& f) {
  std::set<std::string> letters, metas;
  collect_leaves(f, letters, metas);
  return {metas.begin(), metas.end()};
}

bool has_metavariables(const Formula& f) { return !metavariables(f).empty(); }

namespace {

void print_to(const Formula& f, std::ostringstream& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out << f.name();
      return;
    case FormulaKind::Top:
      out << "top";
      return;
    case FormulaKind::Bot:
      out << "bot";
      return;
    case FormulaKind::Neg:
      out << "(not ";
      print_to(f.child(), out);
      out << ')';
      return;
    case FormulaKind::Or:
      out << "(or ";
      print_to(f.left(), out);
      out << ' ';
      print_to(f.right(), out);
      out << ')';
      return;
    case FormulaKind::Dia:
      out << "(dia " << f.grade() << ' ';
      print_to(f.child(), out);
      out << ')';
      return;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::ostringstream out;
  print_to(f, out);
  return out.str();
}

namespace {

bool reserved_word(std::string_view w) {
  return w == "top" || w == "bot" || w == "not" || w == "or" || w == "and" || w == "imp" ||
         w == "iff" || w == "dia" || w == "box" || w == "dia!";
}

}  // namespace

bool is_atom_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return !reserved_word(s);
}

namespace {

// Recursive-descent s-expression parser with byte positions in errors.
class Parser {
 public:
  Parser(std::string_view text, bool allow_meta) : text_(text), allow_meta_(allow_meta) {}

  Formula run() {
    Formula f = form();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("trailing input", pos_);
    return f;
  }

 private:
  static bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '!' || c == '?';
  }

  static bool is_reserved(std::string_view w) { return reserved_word(w); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw parse_error("expected a token", pos_);
    return text_.substr(start, pos_ - start);
  }

  std::uint64_t natural() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw parse_error("expected a grade", pos_);
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (kGradeMax - digit) / 10) throw parse_error("grade overflow", start);
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  Formula atom_or_constant() {
    std::size_t start = pos_;
    if (text_[pos_] == '?') {
      if (!allow_meta_) throw parse_error("metavariable outside a schema", pos_);
      ++pos_;
      std::string_view name = word();
      check_atom_shape(name, start + 1);
      return Formula::atom('?' + std::string(name));
    }
    std::string_view w = word();
    if (w == "top") return Formula::top();
    if (w == "bot") return Formula::bot();
    if (is_reserved(w)) throw parse_error("reserved word used as an atom", start);
    check_atom_shape(w, start);
    return Formula::atom(std::string(w));
  }

  void check_atom_shape(std::string_view w, std::size_t at) {
    if (w.empty() || w[0] < 'a' || w[0] > 'z')
      throw parse_error("atom must start with a lowercase letter", at);
    for (char c : w)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
        throw parse_error("bad character in atom", at);
  }

  Formula form() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    if (text_[pos_] != '(') return atom_or_constant();
    ++pos_;  // '('
    skip_ws();
    std::size_t op_at = pos_;
    std::string_view op = word();
    Formula result;
    if (op == "not") {
      result = Formula::neg(form());
    } else if (op == "or") {
      Formula a = form();
      result = Formula::disj(a, form());
    } else if (op == "and") {
      Formula a = form();
      result = Formula::conj(a, form());
    } else if (op == "imp") {
      Formula a = form();
      result = Formula::imp(a, form());
    } else if (op == "iff") {
      Formula a = form();
      result = Formula::iff(a, form());
    } else if (op == "dia") {
      std::uint64_t n = natural();
      result = Formula::dia(n, form());
    } else if (op == "box") {
      std::uint64_t n = natural();
      result = Formula::box(n, form());
    } else if (op == "dia!") {
      std::uint64_t n = natural();
      result = Formula::dia_exact(n, form());
    } else {
      throw parse_error("unknown operator", op_at);
    }
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')')
      throw parse_error("expected ')'", pos_);
    ++pos_;
    return result;
  }

  std::string_view text_;
  bool allow_meta_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text, false).run(); }
Formula parse_schema(std::string_view text) { return Parser(text, true).run(); }

Formula random_formula(Rng& rng, unsigned depth, std::uint64_t grade_bound,
                       const std::vector<std::string>& letters) {
  if (letters.empty()) throw input_error("random_formula needs a non-empty letter list");
  auto leaf = [&] {
    std::uint64_t pick = rng.below(letters.size() + 2);
    if (pick == 0) return Formula::top();
    if (pick == 1) return Formula::bot();
    return Formula::atom(letters[pick - 2]);
  };
  if (depth == 0) return leaf();
  // leaf : not : or : dia = 2 : 2 : 3 : 3
  std::uint64_t pick = rng.below(10);
  if (pick < 2) return leaf();
  if (pick < 4) return Formula::neg(random_formula(rng, depth - 1, grade_bound, letters));
  if (pick < 7) {
    Formula a = random_formula(rng, depth - 1, grade_bound, letters);
    return Formula::disj(a, random_formula(rng, depth - 1, grade_bound, letters));
  }
  std::uint64_t n = rng.below(grade_bound + 1);
  return Formula::dia(n, random_formula(rng, depth - 1, grade_bound, letters));
}

Formula random_formula(std::uint64_t seed, unsigned depth, std::uint64_t grade_bound,
                       const std::vector<std::string>& letters) {
  Rng rng(seed);
  return random_formula(rng, depth, grade_bound, letters);
}

}  // namespace gml
