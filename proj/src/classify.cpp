#include "qg/classify.hpp"

#include "qg/encoders.hpp"
#include "qg/eval.hpp"

namespace qg::cls {

using namespace qg::term;

FormulaClass delta0() { return FormulaClass{Level::Delta0, 0}; }
FormulaClass pi(std::uint32_t n) { return FormulaClass{Level::Pi, n}; }
FormulaClass sigma(std::uint32_t n) { return FormulaClass{Level::Sigma, n}; }

std::string to_string(const FormulaClass& c) {
  switch (c.level) {
    case Level::Delta0: return "Delta0";
    case Level::Pi: return "Pi(" + std::to_string(c.n) + ")";
    case Level::Sigma: return "Sigma(" + std::to_string(c.n) + ")";
    case Level::Unclassified: return "Unclassified";
  }
  return "?";
}

namespace {

// Every theta occurrence must lie inside a verbatim canonical E term (or a
// verified Dag numeral). Fills the offending path when it does not.
bool theta_ok_term(TermP t, std::string path, std::string* offending) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
    case TermKind::AncConst:
      return true;
    case TermKind::DagNumeral:
      if (enc::verify_dag_numeral(*t->dag)) return true;
      for (const auto& n : t->dag->nodes) {
        if (!n.is_const && n.fn == Fn::Theta) {
          if (offending) *offending = path + "/dag";
          return false;
        }
      }
      return true;
    case TermKind::Apply: {
      if (enc::match_E(t)) return true;
      if (t->fn == Fn::Theta) {
        if (offending) *offending = path + "/theta";
        return false;
      }
      if (!theta_ok_term(t->a, path + "/" + fn_name(t->fn) + ".0", offending)) return false;
      if (t->b && !theta_ok_term(t->b, path + "/" + fn_name(t->fn) + ".1", offending)) return false;
      return true;
    }
  }
  return true;
}

bool theta_ok(FormulaP f, std::string path, std::string* offending) {
  switch (f->kind) {
    case FKind::Atom:
      return theta_ok_term(f->lhs, path + "/lhs", offending) &&
             theta_ok_term(f->rhs, path + "/rhs", offending);
    case FKind::PredAtom: {
      int i = 0;
      for (TermP a : f->args)
        if (!theta_ok_term(a, path + "/arg" + std::to_string(i++), offending)) return false;
      return true;
    }
    case FKind::Not:
      return theta_ok(f->f, path + "/~", offending);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return theta_ok(f->f, path + "/l", offending) && theta_ok(f->g, path + "/r", offending);
    case FKind::ForAll:
    case FKind::Exists:
      return theta_ok(f->f, path + "/q", offending);
  }
  return true;
}

}  // namespace

std::optional<std::string> first_raw_theta(FormulaP phi) {
  std::string off;
  if (theta_ok(phi, "", &off)) return std::nullopt;
  return off;
}

FormulaClass classify(FormulaP phi) {
  if (!theta_ok(phi, "", nullptr)) return FormulaClass{Level::Unclassified, 0};
  if (sem::bounded_shape(phi)) return delta0();
  // strip one maximal unbounded quantifier block and recurse
  if (phi->kind == FKind::ForAll && !sem::match_bounded_forall(phi, nullptr, nullptr, nullptr)) {
    FormulaP inner = phi->f;
    while (inner->kind == FKind::ForAll &&
           !sem::match_bounded_forall(inner, nullptr, nullptr, nullptr))
      inner = inner->f;
    FormulaClass c = classify(inner);
    switch (c.level) {
      case Level::Delta0:
        return pi(1);
      case Level::Sigma:
        return pi(c.n + 1);
      case Level::Pi:
        return c;  // merged universal blocks
      case Level::Unclassified:
        return c;
    }
  }
  if (phi->kind == FKind::Exists && !sem::match_bounded_exists(phi, nullptr, nullptr, nullptr)) {
    FormulaP inner = phi->f;
    while (inner->kind == FKind::Exists &&
           !sem::match_bounded_exists(inner, nullptr, nullptr, nullptr))
      inner = inner->f;
    FormulaClass c = classify(inner);
    switch (c.level) {
      case Level::Delta0:
        return sigma(1);
      case Level::Pi:
        return sigma(c.n + 1);
      case Level::Sigma:
        return c;
      case Level::Unclassified:
        return c;
    }
  }
  return FormulaClass{Level::Unclassified, 0};
}

namespace {

bool contains_big_E_term(TermP t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
    case TermKind::AncConst:
      return false;
    case TermKind::DagNumeral: {
      // the staged dag layout materializes E_j for every j <= M; it contains
      // E_2 whenever the walk has at least two steps
      std::uint64_t thetas = 0;
      for (const auto& n : t->dag->nodes)
        if (!n.is_const && n.fn == Fn::Theta) ++thetas;
      return thetas >= 2;
    }
    case TermKind::Apply: {
      if (auto j = enc::match_E(t); j && *j >= 2) return true;
      if (contains_big_E_term(t->a)) return true;
      return t->b && contains_big_E_term(t->b);
    }
  }
  return false;
}

bool contains_big_E(FormulaP f) {
  switch (f->kind) {
    case FKind::Atom:
      return contains_big_E_term(f->lhs) || contains_big_E_term(f->rhs);
    case FKind::PredAtom:
      for (TermP a : f->args)
        if (contains_big_E_term(a)) return true;
      return false;
    case FKind::Not:
      return contains_big_E(f->f);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return contains_big_E(f->f) || contains_big_E(f->g);
    case FKind::ForAll:
    case FKind::Exists:
      return contains_big_E(f->f);
  }
  return false;
}

}  // namespace

bool is_simple_pi1(FormulaP phi) {
  FormulaP inner = phi;
  while (inner->kind == FKind::ForAll &&
         !sem::match_bounded_forall(inner, nullptr, nullptr, nullptr))
    inner = inner->f;
  if (!sem::bounded_shape(inner)) return false;
  return !contains_big_E(phi);
}

namespace {

TermP translate_term(TermP t) {
  switch (t->kind) {
    case TermKind::AncConst:
      return enc::build_E(t->var - 1);
    case TermKind::Apply: {
      TermP a = translate_term(t->a);
      if (arity(t->fn) == 1) return a == t->a ? t : apply1(t->fn, a);
      TermP b = translate_term(t->b);
      return (a == t->a && b == t->b) ? t : apply2(t->fn, a, b);
    }
    default:
      return t;
  }
}

template <typename TermFn, typename AtomFn>
FormulaP map_formula(FormulaP f, TermFn&& tf, AtomFn&& af) {
  switch (f->kind) {
    case FKind::Atom: {
      TermP l = tf(f->lhs);
      TermP r = tf(f->rhs);
      return (l == f->lhs && r == f->rhs) ? f : atom(f->rel, l, r);
    }
    case FKind::PredAtom:
      return af(f);
    case FKind::Not: {
      FormulaP x = map_formula(f->f, tf, af);
      return x == f->f ? f : fnot(x);
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Implies: {
      FormulaP x = map_formula(f->f, tf, af);
      FormulaP y = map_formula(f->g, tf, af);
      if (x == f->f && y == f->g) return f;
      return f->kind == FKind::And ? fand(x, y) : f->kind == FKind::Or ? f_or(x, y) : implies(x, y);
    }
    case FKind::ForAll:
    case FKind::Exists: {
      FormulaP x = map_formula(f->f, tf, af);
      if (x == f->f) return f;
      return f->kind == FKind::ForAll ? forall(f->var, x) : exists(f->var, x);
    }
  }
  return f;
}

}  // namespace

FormulaP translate_anc(FormulaP phi) {
  return map_formula(
      phi, [](TermP t) { return translate_term(t); },
      [](FormulaP f) {
        std::vector<TermP> args;
        for (TermP a : f->args) args.push_back(translate_term(a));
        return pred_atom(f->pred, std::move(args));
      });
}

FormulaP expand_arith_predicates(FormulaP phi) {
  return map_formula(
      phi, [](TermP t) { return t; },
      [](FormulaP f) -> FormulaP {
        if (f->pred == PredSym::Add) {
          TermP x = f->args[0], y = f->args[1], z = f->args[2];
          return fand(eq(sub(z, x), y), leq(x, z));
        }
        if (f->pred == PredSym::Mult) {
          TermP x = f->args[0], y = f->args[1], z = f->args[2];
          FormulaP zero_case = implies(f_or(eq(x, c0()), eq(y, c0())), eq(z, c0()));
          FormulaP pos_case = implies(fand(neq(x, c0()), neq(y, c0())),
                                      fand(eq(div(z, x), y), lt(div(pred(z), x), y)));
          return fand(zero_case, pos_case);
        }
        return f;
      });
}

}  // namespace qg::cls
