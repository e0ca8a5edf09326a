#pragma once

#include <memory>
#include <unordered_map>

#include "qg/proof.hpp"

namespace qg::ded {

// Emits proof steps with deduplication: a step whose formula already occurred
// (modulo definitional expansion) is reused rather than re-emitted.
class ProofBuilder {
 public:
  std::uint32_t logical(term::FormulaP f);
  std::uint32_t axiom(term::FormulaP f);
  std::uint32_t mp(std::uint32_t i, std::uint32_t j);
  // modus ponens emitting a chosen (definitionally equal) surface formula
  std::uint32_t mp_as(std::uint32_t i, std::uint32_t j, term::FormulaP surface);
  std::optional<std::uint32_t> find(term::FormulaP f) const;
  term::FormulaP formula(std::uint32_t step) const { return p_.steps[step].formula; }
  const Proof& proof() const { return p_; }
  Proof take() { return std::move(p_); }

 private:
  std::uint32_t push(term::FormulaP f, Justification j);
  Proof p_;
  std::unordered_map<term::FormulaP, std::uint32_t> by_tau_;
};

// Derivations as trees over hypotheses, logical axioms, proper axioms and
// modus ponens. discharge() is the deduction theorem (constructive, the
// usual I/II transformation); generalize() is the admissible generalization
// rule (closure for logical axioms, schema 4 for closed leaves, schema 3
// across modus ponens). compile() writes a hypothesis-free tree into a
// ProofBuilder.
class Deriv {
 public:
  struct Node;
  using P = std::shared_ptr<const Node>;
  struct Node {
    enum class K : std::uint8_t { Hyp, Logical, Axiom, External, MP } k;
    term::FormulaP f;  // conclusion
    std::uint32_t ext = 0;
    P a, b;  // MP: a proves A, b proves A -> f
    bool uses_hyp = false;
  };

  static P hyp(term::FormulaP f);
  static P logical(term::FormulaP f);
  static P axiom(term::FormulaP f);
  static P external(std::uint32_t step, term::FormulaP f);
  static P mp(P premise, P impl);

  static P discharge(P n, term::FormulaP h);
  static P generalize(P n, std::uint32_t x);
  static std::uint32_t compile(P n, ProofBuilder& b);
  static std::uint32_t compile_as(P n, ProofBuilder& b, term::FormulaP surface);
};

// Derived propositional and quantifier rules. All formulas are handled in
// the definitional {not, implies, forall} fragment; callers pass tau-forms.
namespace rules {

Deriv::P identity(term::FormulaP a);                       // |- a -> a
Deriv::P weaken(Deriv::P nb, term::FormulaP a);            // |- b  ==>  |- a -> b
Deriv::P syllogism(Deriv::P ab, Deriv::P bc);              // |- a->b, b->c  ==>  a->c
Deriv::P dne_impl(term::FormulaP a);                       // |- ~~a -> a
Deriv::P dni_impl(term::FormulaP a);                       // |- a -> ~~a
Deriv::P dne(Deriv::P nna);                                // |- ~~a  ==>  |- a
Deriv::P dni(Deriv::P na);                                 // |- a  ==>  |- ~~a
Deriv::P efq(Deriv::P a, Deriv::P not_a, term::FormulaP t);// |- a, ~a  ==>  |- t
Deriv::P contrapose(Deriv::P ab);                          // |- a->b  ==>  |- ~b->~a
Deriv::P and_intro(Deriv::P a, Deriv::P b);                // |- ~(a -> ~b)
Deriv::P and_elim_l(Deriv::P ab);
Deriv::P and_elim_r(Deriv::P ab);
Deriv::P or_intro_l(Deriv::P a, term::FormulaP b);         // |- ~a -> b
Deriv::P or_intro_r(Deriv::P b, term::FormulaP a);
// |- ~a->b with case implications |- a->c and |- b->c gives |- c
Deriv::P or_elim(Deriv::P or_ab, Deriv::P ac, Deriv::P bc);
Deriv::P not_impl(Deriv::P a, Deriv::P not_b);             // |- a, ~b  ==>  |- ~(a->b)

Deriv::P spec_inst(Deriv::P all, term::TermP t);           // |- forall x phi  ==>  |- phi[t]
// |- phi[t]  ==>  |- ~forall v ~phi  (the expansion of exists v phi)
Deriv::P exists_intro(Deriv::P inst, std::uint32_t v, term::FormulaP phi, term::TermP t);

}  // namespace rules

}  // namespace qg::ded
