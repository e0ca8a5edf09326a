#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qg/nat.hpp"

namespace qg::term {

// The seven function symbols of the Q-Grounding language. Nothing else is
// constructible: Pred, Half and their iterates are macros that expand to
// Sub-by-C1 / Div-by-C2 chains before they ever reach an AST.
enum class Fn : std::uint8_t { Sub, Div, Max, Root, Log, Count, Theta };

constexpr int arity(Fn f) {
  switch (f) {
    case Fn::Log:
    case Fn::Theta:
      return 1;
    default:
      return 2;
  }
}

const char* fn_name(Fn f);

enum class ConstSym : std::uint8_t { C0, C1, C2 };

// Dag-oriented ground term: node list in definition order, every argument
// reference points to a strictly earlier node.
struct DagTerm {
  struct Node {
    bool is_const = true;
    ConstSym cst = ConstSym::C0;
    Fn fn = Fn::Sub;
    std::uint32_t a = 0;
    std::uint32_t b = 0;  // ignored for unary fn
  };
  std::vector<Node> nodes;
  std::uint32_t root = 0;

  bool well_formed() const;
  std::uint64_t node_count() const { return nodes.size(); }
};

// AncConst is the C_J (J >= 3) constant family of the additive-naming
// language; it exists only between the extended parser and translate_anc,
// which rewrites every occurrence into an E-term. Nothing else accepts it.
enum class TermKind : std::uint8_t { Const, Var, Apply, DagNumeral, AncConst };

struct TermNode;
using TermP = const TermNode*;

// Interned, immutable term node. Equality of interned terms is pointer
// equality; every node carries its structural hash and symbol count.
struct TermNode {
  TermKind kind;
  ConstSym cst = ConstSym::C0;         // Const
  std::uint32_t var = 0;               // Var
  Fn fn = Fn::Sub;                     // Apply
  TermP a = nullptr;                   // Apply arg 0
  TermP b = nullptr;                   // Apply arg 1 (binary only)
  std::shared_ptr<const DagTerm> dag;  // DagNumeral payload

  std::size_t hash = 0;
  bool ground = true;
  std::uint64_t symbols = 1;  // function + constant symbol occurrences
  std::uint32_t depth = 1;
};

TermP c0();
TermP c1();
TermP c2();
TermP cnst(ConstSym c);
TermP var(std::uint32_t index);
TermP apply1(Fn f, TermP x);
TermP apply2(Fn f, TermP x, TermP y);

// Compressed ground numeral backed by a Dag (used for Goedel-scale numbers
// where the tree numeral would be astronomically large). The Dag must be an
// observable construction; its value is computed on demand.
TermP dag_numeral(std::shared_ptr<const DagTerm> dag);

TermP anc_const(std::uint32_t j);  // j >= 3

inline TermP sub(TermP x, TermP y) { return apply2(Fn::Sub, x, y); }
inline TermP div(TermP x, TermP y) { return apply2(Fn::Div, x, y); }
inline TermP max(TermP x, TermP y) { return apply2(Fn::Max, x, y); }
inline TermP root(TermP x, TermP y) { return apply2(Fn::Root, x, y); }
inline TermP log2t(TermP x) { return apply1(Fn::Log, x); }
inline TermP count(TermP x, TermP y) { return apply2(Fn::Count, x, y); }
inline TermP theta(TermP x) { return apply1(Fn::Theta, x); }

inline TermP pred(TermP x) { return sub(x, c1()); }
inline TermP half(TermP x) { return div(x, c2()); }
TermP pred_n(TermP x, std::uint64_t n);
TermP half_n(TermP x, std::uint64_t n);
TermP theta_n(TermP x, std::uint64_t n);

bool contains_var(TermP t, std::uint32_t v);
void collect_vars(TermP t, std::vector<std::uint32_t>& out);

// --------------------------------------------------------------------------
// Formulas. Atoms are the two relations "=" and "<=". Bounded quantifiers
// are derived forms: "forall v<=t . phi" is ForAll(v, Leq(v,t) -> phi) and
// "exists v<=t . phi" is Exists(v, Leq(v,t) & phi).
// --------------------------------------------------------------------------

enum class Rel : std::uint8_t { Eq, Leq };

// Recognizer predicates kept as atoms: proof-checking predicates whose
// semantics is supplied by the deduction kernel at evaluation time, plus the
// Add/Mult sugar atoms that expand_arith_predicates rewrites away.
enum class PredSym : std::uint8_t { HilbPrf, SubstPrf, Add, Mult };

constexpr int pred_arity(PredSym p) {
  switch (p) {
    case PredSym::HilbPrf:
      return 2;
    default:
      return 3;
  }
}

const char* pred_name(PredSym p);

enum class FKind : std::uint8_t { Atom, PredAtom, Not, And, Or, Implies, ForAll, Exists };

struct FormulaNode;
using FormulaP = const FormulaNode*;

struct FormulaNode {
  FKind kind;
  Rel rel = Rel::Eq;  // Atom
  TermP lhs = nullptr;
  TermP rhs = nullptr;
  PredSym pred = PredSym::HilbPrf;  // PredAtom
  std::vector<TermP> args;          // PredAtom
  FormulaP f = nullptr;             // Not body / left child / quantifier body
  FormulaP g = nullptr;             // right child
  std::uint32_t var = 0;            // quantifier variable

  std::size_t hash = 0;
  std::vector<std::uint32_t> free_vars;  // sorted, deduplicated
  std::uint64_t size = 1;                // node count, for budgeting
};

FormulaP atom(Rel r, TermP l, TermP rh);
inline FormulaP eq(TermP l, TermP r) { return atom(Rel::Eq, l, r); }
inline FormulaP leq(TermP l, TermP r) { return atom(Rel::Leq, l, r); }
FormulaP pred_atom(PredSym p, std::vector<TermP> args);
FormulaP fnot(FormulaP x);
FormulaP fand(FormulaP x, FormulaP y);
FormulaP f_or(FormulaP x, FormulaP y);
FormulaP implies(FormulaP x, FormulaP y);
FormulaP forall(std::uint32_t v, FormulaP body);
FormulaP exists(std::uint32_t v, FormulaP body);

// neq / bounded-quantifier conveniences.
inline FormulaP neq(TermP l, TermP r) { return fnot(eq(l, r)); }
inline FormulaP lt(TermP l, TermP r) { return fnot(leq(r, l)); }
FormulaP forall_le(std::uint32_t v, TermP bound, FormulaP body);
FormulaP exists_le(std::uint32_t v, TermP bound, FormulaP body);

inline bool is_sentence(FormulaP f) { return f->free_vars.empty(); }
bool free_in(FormulaP f, std::uint32_t v);

// substitutable(phi, v, t): false iff some free occurrence of v sits under a
// binder that captures a variable of t.
bool substitutable(FormulaP phi, std::uint32_t v, TermP t);

struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TermP substitute_term(TermP t, std::uint32_t v, TermP repl);
// Replaces free occurrences of v by t; throws CaptureError when
// substitutable(phi, v, t) is false.
FormulaP substitute(FormulaP phi, std::uint32_t v, TermP t);

// Definitional expansion: And(a,b) => ~(a -> ~b), Or(a,b) => ~a -> b,
// Exists(v,a) => ~Forall(v,~a). The deductive apparatus treats formulas
// modulo this expansion (its logical axioms only speak "~", "->", "forall").
FormulaP tau(FormulaP f);

std::string to_string(TermP t);
std::string to_string(FormulaP f);

// Line-oriented serialization of Dag terms: "idx: op arg1 arg2" records with
// a final "root: idx" line.
std::string dag_to_records(const DagTerm& g);
DagTerm dag_from_records(const std::string& text);

// Tree unfolding of a Dag term; evaluates identically under every
// interpretation.
TermP unfold_dag(const DagTerm& g);

}  // namespace qg::term
