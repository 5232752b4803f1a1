#include "gml/schema.hpp"

#include "gml/errors.hpp"

namespace gml {

namespace {

Formula substitute(const Formula& f, const std::map<std::string, Formula>& subst) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (!f.name().empty() && f.name()[0] == '?') {
        auto it = subst.find(f.name());
        if (it == subst.end())
          throw input_error("unbound metavariable " + f.name());
        return it->second;
      }
      return f;
    }
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(substitute(f.child(), subst));
    case FormulaKind::Or: {
      Formula a = substitute(f.left(), subst);
      return Formula::disj(a, substitute(f.right(), subst));
    }
    case FormulaKind::Dia:
      return Formula::dia(f.grade(), substitute(f.child(), subst));
  }
  return f;
}

const Formula kPhi = Formula::atom("?phi");
const Formula kPsi = Formula::atom("?psi");

}  // namespace

Formula instantiate(const Schema& schema) { return substitute(schema.body, schema.subst); }

Formula ax2_body() { return Formula::iff(Formula::dia(0, kPhi), Formula::top()); }

Formula ax3_body(std::uint64_t n) {
  return Formula::iff(Formula::dia(n, Formula::bot()), Formula::bot());
}

Formula ax4_body(std::uint64_t n) {
  return Formula::imp(Formula::dia(n + 1, kPhi), Formula::dia(n, kPhi));
}

Formula ax5_body(std::uint64_t n) {
  return Formula::imp(Formula::box(1, Formula::imp(kPhi, kPsi)),
                      Formula::imp(Formula::dia(n, kPhi), Formula::dia(n, kPsi)));
}

Formula ax6_body(std::uint64_t m, std::uint64_t n) {
  Formula no_overlap = Formula::neg(Formula::dia(1, Formula::conj(kPhi, kPsi)));
  Formula exact_m = Formula::dia_exact(m, kPhi);
  Formula exact_n = Formula::dia_exact(n, kPsi);
  Formula antecedent = Formula::conj(no_overlap, Formula::conj(exact_m, exact_n));
  return Formula::imp(antecedent, Formula::dia_exact(m + n, Formula::disj(kPhi, kPsi)));
}

Formula ax7_body() {
  return Formula::iff(Formula::dia(1, Formula::disj(kPhi, kPsi)),
                      Formula::disj(Formula::dia(1, kPhi), Formula::dia(1, kPsi)));
}

Formula separation_body(std::uint64_t n) {
  Formula both = Formula::conj(Formula::dia(n, kPhi), Formula::dia(n, Formula::neg(kPhi)));
  Formula either = Formula::disj(Formula::dia(n, kPsi), Formula::dia(n, Formula::neg(kPsi)));
  return Formula::imp(both, either);
}

}  // namespace gml
