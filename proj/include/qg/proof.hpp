#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qg/codec.hpp"
#include "qg/term.hpp"

namespace qg::ded {

// The six logical axiom schemas: Mendelson's I-III for the propositional
// part and Enderton's 2-4 for the quantifiers, with the closure rule that a
// universal generalization of a logical axiom is again a logical axiom.
// Modus ponens is the only inference rule.
enum class SchemaId : std::uint8_t { I, II, III, S2, S3, S4 };

const char* schema_name(SchemaId s);
std::optional<SchemaId> schema_from_name(const std::string& s);

// Matches phi (after stripping any outer universal prefix) against the six
// schemas, in the order I, II, III, 2, 3, 4; schema 2 additionally verifies
// substitutability, schema 4 the free-variable side condition. Connectives
// are compared modulo the definitional expansion of And/Or/Exists.
std::optional<SchemaId> is_logical_axiom(term::FormulaP phi);

struct Justification {
  enum class Kind : std::uint8_t { LogicalAxiom, ProperAxiom, ModusPonens } kind;
  SchemaId schema = SchemaId::I;  // LogicalAxiom
  std::uint32_t i = 0, j = 0;     // ModusPonens premises

  static Justification logical(SchemaId s) {
    return {Kind::LogicalAxiom, s, 0, 0};
  }
  static Justification axiom() { return {Kind::ProperAxiom, SchemaId::I, 0, 0}; }
  static Justification mp(std::uint32_t i, std::uint32_t j) {
    return {Kind::ModusPonens, SchemaId::I, i, j};
  }
};

struct Proof {
  struct Step {
    term::FormulaP formula;
    Justification just;
  };
  std::vector<Step> steps;

  term::FormulaP theorem() const { return steps.empty() ? nullptr : steps.back().formula; }
  godel::GoedelBytes bytes() const;
  std::uint64_t byte_length() const { return bytes().size(); }
};

// A named collection of axioms given by a decidable membership recognizer on
// byte strings. accepts() is the same predicate on decoded formulas (the two
// are kept consistent by construction); enumerate lists the finite part when
// available.
struct AxiomSystemSpec {
  std::string name;
  std::function<bool(term::FormulaP)> accepts;
  std::optional<std::vector<term::FormulaP>> enumerator;

  bool recognizer(const godel::GoedelBytes& b) const;
  AxiomSystemSpec with_extra_axiom(term::FormulaP extra) const;
};

struct Verdict {
  bool valid = false;
  term::FormulaP theorem = nullptr;  // when valid
  std::uint32_t step = 0;            // first failing step when invalid
  std::string reason;
};

// Annotation-free check: every step must be a logical axiom, a formula the
// recognizer accepts, or a modus ponens of two earlier steps (premise
// matching is modulo the definitional expansion).
Verdict check_steps(const std::vector<term::FormulaP>& steps, const AxiomSystemSpec& alpha);

// Structured check: like check_steps, but each step's recorded justification
// is verified as claimed.
Verdict check_proof(const Proof& p, const AxiomSystemSpec& alpha);

// ---------------------------------------------------------------------------
// Arithmetized predicates (Subst / ExPrf / SubstPrf) and diagonalization.
// ---------------------------------------------------------------------------

// True iff g decodes to a formula and h decodes to the sentence obtained by
// substituting the canonical numeral of g's Goedel number for every free
// variable of g. Undecodable inputs yield false.
bool subst_predicate(const godel::GoedelBytes& g, const godel::GoedelBytes& h);

// True iff p decodes to a proof of the theorem encoded by t from base plus
// one added axiom whose encoding is h.
bool ex_prf(const godel::GoedelBytes& h, const godel::GoedelBytes& t,
            const godel::GoedelBytes& p, const AxiomSystemSpec& base);

// Eq-encode disjunction: p proves t from base alone, or some h <= p (always
// witnessed by one of p's own steps) satisfies Subst(g, h) and ExPrf(h,t,p).
bool subst_prf(const godel::GoedelBytes& g, const godel::GoedelBytes& t,
               const godel::GoedelBytes& p, const AxiomSystemSpec& base);

// True iff y encodes a valid proof of the theorem whose Goedel number is x,
// from the given system (the HilbPrf predicate).
bool hilb_prf(const Nat& theorem_number, const Nat& proof_number, const AxiomSystemSpec& sys);

// n = goedel number of gamma (which must have exactly one free variable);
// returns gamma with the canonical numeral of n substituted for it.
term::FormulaP diagonalize(term::FormulaP gamma);

godel::GoedelBytes bytes_from_number(const Nat& n);

// Sidecar justification list, line oriented: "k LOG I" | "k AX" | "k MP i j".
std::string justifications_to_text(const Proof& p);
Proof proof_from_parts(const std::vector<term::FormulaP>& steps, const std::string& just_text);

}  // namespace qg::ded
