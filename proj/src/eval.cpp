#include "qg/eval.hpp"

#include <cassert>

namespace qg::sem {

using namespace qg::term;

namespace {

// Internal: a partial-theta application fell outside the model; the
// enclosing atomic formula becomes false.
struct ThetaBlocked {};

Nat nat_root(const Nat& x, const Nat& y) {
  if (y == 0) return 0;
  if (y == 1) return x;
  if (x <= 1) return x;
  std::uint64_t bits = floor_log2(x) + 1;
  if (y > bits) return 1;  // 2^y > x, so floor(x^(1/y)) = 1 for x >= 2
  auto yc = static_cast<unsigned>(y);
  // largest r with r^y <= x, by binary search
  Nat lo = 1;
  Nat hi = Nat(1) << (bits / yc + 1);
  while (lo < hi) {
    Nat mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, yc) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Nat nat_count(const Nat& x, const Nat& j) {
  if (x == 0 || j == 0) return 0;
  std::uint64_t bits = floor_log2(x) + 1;
  std::uint64_t upto = j >= bits ? bits : static_cast<std::uint64_t>(j);
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < upto; ++i)
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(i))) ++c;
  return Nat(c);
}

Nat apply_theta(const Nat& x, const EvalContext& ctx) {
  if (ctx.zeta) {
    auto img = ctx.zeta->image(x);
    if (!img) throw InterpretationExhausted();
    return *img;
  }
  if (!is_pow2(x)) return 0;  // walk4: zero off the powers of 2
  if (!ctx.theta) throw InterpretationExhausted();
  std::uint64_t k = floor_log2(x);
  auto img = ctx.theta->image_exponent(k);
  if (ctx.domain_bound) {
    const Nat& bound = *ctx.domain_bound;
    if (!img || nat_pow2(*img) >= bound) {
      if (ctx.mode == ThetaMode::TotalClipped) {
        // largest power of 2 inside [0, bound)
        if (bound <= 1) throw ThetaBlocked{};
        return nat_pow2(floor_log2(bound - 1));
      }
      throw ThetaBlocked{};
    }
    return nat_pow2(*img);
  }
  if (!img) throw InterpretationExhausted();
  return nat_pow2(*img);
}

Nat eval_rec(TermP t, const EvalContext& ctx, const Env& env) {
  switch (t->kind) {
    case TermKind::Const:
      return Nat(static_cast<int>(t->cst));
    case TermKind::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) throw NotGroundError();
      return it->second;
    }
    case TermKind::AncConst:
      // additive-naming convention: C_j denotes 2^(j-1)
      return nat_pow2(t->var - 1);
    case TermKind::DagNumeral:
      return eval_dag(*t->dag, ctx);
    case TermKind::Apply: {
      Nat a = eval_rec(t->a, ctx, env);
      if (t->fn == Fn::Theta) return apply_theta(a, ctx);
      if (arity(t->fn) == 1) return eval_fn(t->fn, {a});
      Nat b = eval_rec(t->b, ctx, env);
      return eval_fn(t->fn, {a, b});
    }
  }
  throw EvalError("unreachable term kind");
}

}  // namespace

Nat eval_fn(Fn f, const std::vector<Nat>& args) {
  switch (f) {
    case Fn::Sub:
      return sub_trunc(args[0], args[1]);
    case Fn::Div:
      return args[1] == 0 ? Nat(0) : Nat(args[0] / args[1]);
    case Fn::Max:
      return args[0] >= args[1] ? args[0] : args[1];
    case Fn::Root:
      return nat_root(args[0], args[1]);
    case Fn::Log:
      return Nat(floor_log2(args[0]));
    case Fn::Count:
      return nat_count(args[0], args[1]);
    case Fn::Theta:
      throw EvalError("eval_fn: theta requires an interpretation");
  }
  throw EvalError("unreachable fn");
}

bool power(const Nat& x) {
  if (x == 1) return true;
  Nat lx = eval_fn(Fn::Log, {x});
  Nat lp = eval_fn(Fn::Log, {sub_trunc(x, 1)});
  return lx != lp;
}

Nat eval_dag(const DagTerm& g, const EvalContext& ctx) {
  std::vector<Nat> vals(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.is_const) {
      vals[i] = Nat(static_cast<int>(n.cst));
    } else if (n.fn == Fn::Theta) {
      vals[i] = apply_theta(vals[n.a], ctx);
    } else if (arity(n.fn) == 1) {
      vals[i] = eval_fn(n.fn, {vals[n.a]});
    } else {
      vals[i] = eval_fn(n.fn, {vals[n.a], vals[n.b]});
    }
  }
  return vals[g.root];
}

Nat eval_term(TermP t, const EvalContext& ctx, const Env& env) {
  if (!t->ground && env.empty()) throw NotGroundError();
  try {
    return eval_rec(t, ctx, env);
  } catch (const ThetaBlocked&) {
    throw EvalError("partial theta application outside a formula context");
  }
}

Nat eval_term(TermP t, const ThetaInterpretation& sigma) {
  EvalContext ctx;
  ctx.theta = &sigma;
  return eval_term(t, ctx);
}

bool match_bounded_forall(FormulaP f, std::uint32_t* v, TermP* bound, FormulaP* matrix) {
  if (f->kind != FKind::ForAll) return false;
  FormulaP body = f->f;
  if (body->kind != FKind::Implies) return false;
  FormulaP guard = body->f;
  if (guard->kind != FKind::Atom || guard->rel != Rel::Leq) return false;
  if (guard->lhs->kind != TermKind::Var || guard->lhs->var != f->var) return false;
  if (contains_var(guard->rhs, f->var)) return false;
  if (v) *v = f->var;
  if (bound) *bound = guard->rhs;
  if (matrix) *matrix = body->g;
  return true;
}

bool match_bounded_exists(FormulaP f, std::uint32_t* v, TermP* bound, FormulaP* matrix) {
  if (f->kind != FKind::Exists) return false;
  FormulaP body = f->f;
  if (body->kind != FKind::And) return false;
  FormulaP guard = body->f;
  if (guard->kind != FKind::Atom || guard->rel != Rel::Leq) return false;
  if (guard->lhs->kind != TermKind::Var || guard->lhs->var != f->var) return false;
  if (contains_var(guard->rhs, f->var)) return false;
  if (v) *v = f->var;
  if (bound) *bound = guard->rhs;
  if (matrix) *matrix = body->g;
  return true;
}

bool bounded_shape(FormulaP f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::PredAtom:
      return true;
    case FKind::Not:
      return bounded_shape(f->f);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return bounded_shape(f->f) && bounded_shape(f->g);
    case FKind::ForAll:
      return match_bounded_forall(f, nullptr, nullptr, nullptr) && bounded_shape(f->f);
    case FKind::Exists:
      return match_bounded_exists(f, nullptr, nullptr, nullptr) && bounded_shape(f->f);
  }
  return false;
}

namespace {

bool eval_formula_rec(FormulaP phi, const EvalContext& ctx, Env& env) {
  switch (phi->kind) {
    case FKind::Atom: {
      try {
        Nat l = eval_rec(phi->lhs, ctx, env);
        Nat r = eval_rec(phi->rhs, ctx, env);
        return phi->rel == Rel::Eq ? l == r : l <= r;
      } catch (const ThetaBlocked&) {
        return false;
      }
    }
    case FKind::PredAtom: {
      if (phi->pred == PredSym::Add || phi->pred == PredSym::Mult)
        throw EvalError("arithmetic sugar atom must be expanded before evaluation");
      if (!ctx.pred_semantics) throw EvalError("recognizer atom has no supplied semantics");
      std::vector<Nat> args;
      args.reserve(phi->args.size());
      try {
        for (TermP a : phi->args) args.push_back(eval_rec(a, ctx, env));
      } catch (const ThetaBlocked&) {
        return false;
      }
      return ctx.pred_semantics(phi->pred, args);
    }
    case FKind::Not:
      return !eval_formula_rec(phi->f, ctx, env);
    case FKind::And:
      return eval_formula_rec(phi->f, ctx, env) && eval_formula_rec(phi->g, ctx, env);
    case FKind::Or:
      return eval_formula_rec(phi->f, ctx, env) || eval_formula_rec(phi->g, ctx, env);
    case FKind::Implies:
      return !eval_formula_rec(phi->f, ctx, env) || eval_formula_rec(phi->g, ctx, env);
    case FKind::ForAll:
    case FKind::Exists: {
      const bool is_forall = phi->kind == FKind::ForAll;
      Nat limit;  // iterate v in [0, limit]
      std::uint32_t v = phi->var;
      TermP bound = nullptr;
      FormulaP matrix = nullptr;
      bool is_bounded = is_forall ? match_bounded_forall(phi, &v, &bound, &matrix)
                                  : match_bounded_exists(phi, &v, &bound, &matrix);
      if (ctx.domain_bound) {
        limit = *ctx.domain_bound - 1;
        if (is_bounded) {
          // restrict further by the explicit bound
          Nat b;
          try {
            b = eval_rec(bound, ctx, env);
          } catch (const ThetaBlocked&) {
            b = limit;  // guard atom will handle it pointwise
          }
          if (b < limit) limit = b;
        }
      } else if (is_bounded) {
        try {
          limit = eval_rec(bound, ctx, env);
        } catch (const ThetaBlocked&) {
          // guard is false at every point, so the quantifier collapses
          return is_forall;
        }
      } else {
        throw UnboundedQuantifier();
      }
      auto saved = env.find(v) != env.end() ? std::optional<Nat>(env[v]) : std::nullopt;
      bool result = is_forall;
      for (Nat x = 0; x <= limit; ++x) {
        env[v] = x;
        bool inst = eval_formula_rec(phi->f, ctx, env);
        if (is_forall && !inst) {
          result = false;
          break;
        }
        if (!is_forall && inst) {
          result = true;
          break;
        }
      }
      if (saved)
        env[v] = *saved;
      else
        env.erase(v);
      return result;
    }
  }
  throw EvalError("unreachable formula kind");
}

}  // namespace

bool eval_formula(FormulaP phi, const EvalContext& ctx, const Env& env) {
  Env scratch = env;
  return eval_formula_rec(phi, ctx, scratch);
}

bool eval_formula(FormulaP phi, const ThetaInterpretation& sigma) {
  EvalContext ctx;
  ctx.theta = &sigma;
  return eval_formula(phi, ctx);
}

}  // namespace qg::sem
