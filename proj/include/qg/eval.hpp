#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qg/interp.hpp"
#include "qg/nat.hpp"
#include "qg/term.hpp"

namespace qg::sem {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotGroundError : EvalError {
  NotGroundError() : EvalError("term is not ground") {}
};
struct InterpretationExhausted : EvalError {
  InterpretationExhausted() : EvalError("interpretation exhausted: theta applied outside domain") {}
};
struct UnboundedQuantifier : EvalError {
  UnboundedQuantifier() : EvalError("unbounded quantifier over infinite domain") {}
};

// Exact semantics of the six non-growth functions (theta excluded).
//   Sub(x,y)   = 0 if x <= y else x - y
//   Div(x,y)   = 0 if y = 0 else floor(x/y)
//   Max(x,y)
//   Root(x,y)  = floor(x^(1/y)) if y >= 1 else 0
//   Log(x)     = floor(log2 x) for x >= 1, 0 at x = 0
//   Count(x,j) = number of 1-bits among x's rightmost j bits
Nat eval_fn(term::Fn f, const std::vector<Nat>& args);

// Power(x) evaluated through eval_fn semantics (x=1 or Log(x) != Log(x-1)).
bool power(const Nat& x);

// How theta behaves at a power of 2 whose image falls outside a finite
// model's domain: PartialBlocks makes the enclosing atomic formula false,
// TotalClipped maps it to the largest power inside the domain.
enum class ThetaMode { Sampled, PartialBlocks, TotalClipped };

// Semantics for recognizer atoms (HilbPrf / SubstPrf); supplied by the
// deduction kernel, absent by default.
using PredSemantics = std::function<bool(term::PredSym, const std::vector<Nat>&)>;

struct EvalContext {
  const ThetaInterpretation* theta = nullptr;
  const ZetaInterpretation* zeta = nullptr;  // when set, the unary Q-symbol is read as zeta
  std::optional<Nat> domain_bound;           // quantifiers range over [0, bound)
  ThetaMode mode = ThetaMode::Sampled;
  PredSemantics pred_semantics;
};

using Env = std::unordered_map<std::uint32_t, Nat>;

Nat eval_term(term::TermP t, const EvalContext& ctx, const Env& env = {});
Nat eval_term(term::TermP t, const ThetaInterpretation& sigma);
Nat eval_dag(const term::DagTerm& g, const EvalContext& ctx);

bool eval_formula(term::FormulaP phi, const EvalContext& ctx, const Env& env = {});
bool eval_formula(term::FormulaP phi, const ThetaInterpretation& sigma);

// Recognizes the derived bounded-quantifier shapes.
bool match_bounded_forall(term::FormulaP f, std::uint32_t* v, term::TermP* bound,
                          term::FormulaP* matrix);
bool match_bounded_exists(term::FormulaP f, std::uint32_t* v, term::TermP* bound,
                          term::FormulaP* matrix);
// All quantifiers in bounded shape (evaluability; classify adds the theta
// discipline on top of this).
bool bounded_shape(term::FormulaP f);

}  // namespace qg::sem
