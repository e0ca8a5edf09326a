#include "qg/term.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace qg::term {

namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

struct TermKey {
  const TermNode* n;
};

std::size_t dag_hash(const DagTerm& d) {
  std::size_t h = 0xd1b54a32d192ed03ULL;
  for (const auto& nd : d.nodes) {
    std::size_t x = nd.is_const ? (1000 + static_cast<std::size_t>(nd.cst))
                                : mix(static_cast<std::size_t>(nd.fn),
                                      mix(nd.a, nd.b));
    h = mix(h, x);
  }
  return mix(h, d.root);
}

bool dag_equal(const DagTerm& x, const DagTerm& y) {
  if (x.root != y.root || x.nodes.size() != y.nodes.size()) return false;
  for (std::size_t i = 0; i < x.nodes.size(); ++i) {
    const auto& a = x.nodes[i];
    const auto& b = y.nodes[i];
    if (a.is_const != b.is_const) return false;
    if (a.is_const) {
      if (a.cst != b.cst) return false;
    } else {
      if (a.fn != b.fn || a.a != b.a || a.b != b.b) return false;
    }
  }
  return true;
}

struct TermHash {
  std::size_t operator()(const TermKey& k) const { return k.n->hash; }
};

struct TermEq {
  bool operator()(const TermKey& x, const TermKey& y) const {
    const TermNode* a = x.n;
    const TermNode* b = y.n;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case TermKind::Const:
        return a->cst == b->cst;
      case TermKind::Var:
        return a->var == b->var;
      case TermKind::AncConst:
        return a->var == b->var;
      case TermKind::Apply:
        return a->fn == b->fn && a->a == b->a && a->b == b->b;
      case TermKind::DagNumeral:
        return a->dag == b->dag || dag_equal(*a->dag, *b->dag);
    }
    return false;
  }
};

class TermStore {
 public:
  TermP intern(TermNode&& n) {
    std::lock_guard<std::mutex> lk(mu_);
    TermKey probe{&n};
    auto it = set_.find(probe);
    if (it != set_.end()) return it->n;
    nodes_.push_back(std::move(n));
    TermP p = &nodes_.back();
    set_.insert(TermKey{p});
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<TermNode> nodes_;
  std::unordered_set<TermKey, TermHash, TermEq> set_;
};

TermStore& term_store() {
  static TermStore* s = new TermStore();
  return *s;
}

struct FormulaKey {
  const FormulaNode* n;
};

struct FormulaHash {
  std::size_t operator()(const FormulaKey& k) const { return k.n->hash; }
};

struct FormulaEq {
  bool operator()(const FormulaKey& x, const FormulaKey& y) const {
    const FormulaNode* a = x.n;
    const FormulaNode* b = y.n;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case FKind::Atom:
        return a->rel == b->rel && a->lhs == b->lhs && a->rhs == b->rhs;
      case FKind::PredAtom:
        return a->pred == b->pred && a->args == b->args;
      case FKind::Not:
        return a->f == b->f;
      case FKind::And:
      case FKind::Or:
      case FKind::Implies:
        return a->f == b->f && a->g == b->g;
      case FKind::ForAll:
      case FKind::Exists:
        return a->var == b->var && a->f == b->f;
    }
    return false;
  }
};

class FormulaStore {
 public:
  FormulaP intern(FormulaNode&& n) {
    std::lock_guard<std::mutex> lk(mu_);
    FormulaKey probe{&n};
    auto it = set_.find(probe);
    if (it != set_.end()) return it->n;
    nodes_.push_back(std::move(n));
    FormulaP p = &nodes_.back();
    set_.insert(FormulaKey{p});
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<FormulaNode> nodes_;
  std::unordered_set<FormulaKey, FormulaHash, FormulaEq> set_;
};

FormulaStore& formula_store() {
  static FormulaStore* s = new FormulaStore();
  return *s;
}

std::vector<std::uint32_t> merge_vars(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> term_vars_sorted(TermP t) {
  std::vector<std::uint32_t> v;
  collect_vars(t, v);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sub: return "sub";
    case Fn::Div: return "div";
    case Fn::Max: return "max";
    case Fn::Root: return "root";
    case Fn::Log: return "log";
    case Fn::Count: return "count";
    case Fn::Theta: return "theta";
  }
  return "?";
}

const char* pred_name(PredSym p) {
  switch (p) {
    case PredSym::HilbPrf: return "HilbPrf";
    case PredSym::SubstPrf: return "SubstPrf";
    case PredSym::Add: return "Add";
    case PredSym::Mult: return "Mult";
  }
  return "?";
}

bool DagTerm::well_formed() const {
  if (nodes.empty() || root >= nodes.size()) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.is_const) continue;
    if (n.a >= i) return false;
    if (arity(n.fn) == 2 && n.b >= i) return false;
  }
  return true;
}

TermP cnst(ConstSym c) {
  TermNode n;
  n.kind = TermKind::Const;
  n.cst = c;
  n.hash = mix(0x5175, static_cast<std::size_t>(c));
  n.ground = true;
  n.symbols = 1;
  n.depth = 1;
  return term_store().intern(std::move(n));
}

TermP c0() {
  static TermP p = cnst(ConstSym::C0);
  return p;
}
TermP c1() {
  static TermP p = cnst(ConstSym::C1);
  return p;
}
TermP c2() {
  static TermP p = cnst(ConstSym::C2);
  return p;
}

TermP var(std::uint32_t index) {
  TermNode n;
  n.kind = TermKind::Var;
  n.var = index;
  n.hash = mix(0x7a61, index);
  n.ground = false;
  n.symbols = 0;  // variables are not function/constant symbols
  n.depth = 1;
  return term_store().intern(std::move(n));
}

TermP anc_const(std::uint32_t j) {
  if (j < 3) throw std::invalid_argument("anc_const: j must be >= 3");
  TermNode n;
  n.kind = TermKind::AncConst;
  n.var = j;
  n.hash = mix(0xa4c0, j);
  n.ground = true;
  n.symbols = 1;
  n.depth = 1;
  return term_store().intern(std::move(n));
}

TermP apply1(Fn f, TermP x) {
  assert(arity(f) == 1);
  TermNode n;
  n.kind = TermKind::Apply;
  n.fn = f;
  n.a = x;
  n.hash = mix(mix(0xf000 + static_cast<std::size_t>(f), x->hash), 0x11);
  n.ground = x->ground;
  n.symbols = 1 + x->symbols;
  n.depth = 1 + x->depth;
  return term_store().intern(std::move(n));
}

TermP apply2(Fn f, TermP x, TermP y) {
  assert(arity(f) == 2);
  TermNode n;
  n.kind = TermKind::Apply;
  n.fn = f;
  n.a = x;
  n.b = y;
  n.hash = mix(mix(0xf000 + static_cast<std::size_t>(f), x->hash), y->hash);
  n.ground = x->ground && y->ground;
  n.symbols = 1 + x->symbols + y->symbols;
  n.depth = 1 + std::max(x->depth, y->depth);
  return term_store().intern(std::move(n));
}

TermP dag_numeral(std::shared_ptr<const DagTerm> dag) {
  if (!dag || !dag->well_formed()) throw std::invalid_argument("dag_numeral: malformed dag");
  TermNode n;
  n.kind = TermKind::DagNumeral;
  n.dag = std::move(dag);
  n.hash = mix(0xda6, dag_hash(*n.dag));
  n.ground = true;
  n.symbols = n.dag->node_count();
  n.depth = 1;
  return term_store().intern(std::move(n));
}

TermP pred_n(TermP x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = pred(x);
  return x;
}

TermP half_n(TermP x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = half(x);
  return x;
}

TermP theta_n(TermP x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = theta(x);
  return x;
}

bool contains_var(TermP t, std::uint32_t v) {
  switch (t->kind) {
    case TermKind::Var:
      return t->var == v;
    case TermKind::Apply:
      return contains_var(t->a, v) || (t->b && contains_var(t->b, v));
    default:
      return false;
  }
}

void collect_vars(TermP t, std::vector<std::uint32_t>& out) {
  switch (t->kind) {
    case TermKind::Var:
      out.push_back(t->var);
      return;
    case TermKind::Apply:
      collect_vars(t->a, out);
      if (t->b) collect_vars(t->b, out);
      return;
    default:
      return;
  }
}

FormulaP atom(Rel r, TermP l, TermP rh) {
  FormulaNode n;
  n.kind = FKind::Atom;
  n.rel = r;
  n.lhs = l;
  n.rhs = rh;
  n.hash = mix(mix(0xa70 + static_cast<std::size_t>(r), l->hash), rh->hash);
  n.free_vars = merge_vars(term_vars_sorted(l), term_vars_sorted(rh));
  n.size = 1;
  return formula_store().intern(std::move(n));
}

FormulaP pred_atom(PredSym p, std::vector<TermP> args) {
  if (static_cast<int>(args.size()) != pred_arity(p))
    throw std::invalid_argument("pred_atom: arity mismatch");
  FormulaNode n;
  n.kind = FKind::PredAtom;
  n.pred = p;
  n.args = std::move(args);
  std::size_t h = 0x9ed0 + static_cast<std::size_t>(p);
  std::vector<std::uint32_t> fv;
  for (TermP t : n.args) {
    h = mix(h, t->hash);
    fv = merge_vars(fv, term_vars_sorted(t));
  }
  n.hash = h;
  n.free_vars = std::move(fv);
  n.size = 1;
  return formula_store().intern(std::move(n));
}

FormulaP fnot(FormulaP x) {
  FormulaNode n;
  n.kind = FKind::Not;
  n.f = x;
  n.hash = mix(0x40f, x->hash);
  n.free_vars = x->free_vars;
  n.size = 1 + x->size;
  return formula_store().intern(std::move(n));
}

namespace {
FormulaP binary(FKind k, std::size_t tag, FormulaP x, FormulaP y) {
  FormulaNode n;
  n.kind = k;
  n.f = x;
  n.g = y;
  n.hash = mix(mix(tag, x->hash), y->hash);
  n.free_vars = merge_vars(x->free_vars, y->free_vars);
  n.size = 1 + x->size + y->size;
  return formula_store().intern(std::move(n));
}
}  // namespace

FormulaP fand(FormulaP x, FormulaP y) { return binary(FKind::And, 0xa4d, x, y); }
FormulaP f_or(FormulaP x, FormulaP y) { return binary(FKind::Or, 0x0f2, x, y); }
FormulaP implies(FormulaP x, FormulaP y) { return binary(FKind::Implies, 0x1a9, x, y); }

namespace {
FormulaP quant(FKind k, std::size_t tag, std::uint32_t v, FormulaP body) {
  FormulaNode n;
  n.kind = k;
  n.var = v;
  n.f = body;
  n.hash = mix(mix(tag, v), body->hash);
  n.free_vars = body->free_vars;
  auto it = std::lower_bound(n.free_vars.begin(), n.free_vars.end(), v);
  if (it != n.free_vars.end() && *it == v) n.free_vars.erase(it);
  n.size = 1 + body->size;
  return formula_store().intern(std::move(n));
}
}  // namespace

FormulaP forall(std::uint32_t v, FormulaP body) { return quant(FKind::ForAll, 0xfa1, v, body); }
FormulaP exists(std::uint32_t v, FormulaP body) { return quant(FKind::Exists, 0xe15, v, body); }

FormulaP forall_le(std::uint32_t v, TermP bound, FormulaP body) {
  return forall(v, implies(leq(var(v), bound), body));
}

FormulaP exists_le(std::uint32_t v, TermP bound, FormulaP body) {
  return exists(v, fand(leq(var(v), bound), body));
}

bool free_in(FormulaP f, std::uint32_t v) {
  return std::binary_search(f->free_vars.begin(), f->free_vars.end(), v);
}

namespace {
bool substitutable_rec(FormulaP phi, std::uint32_t v, const std::vector<std::uint32_t>& tvars) {
  if (!free_in(phi, v)) return true;
  switch (phi->kind) {
    case FKind::Atom:
    case FKind::PredAtom:
      return true;
    case FKind::Not:
      return substitutable_rec(phi->f, v, tvars);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return substitutable_rec(phi->f, v, tvars) && substitutable_rec(phi->g, v, tvars);
    case FKind::ForAll:
    case FKind::Exists:
      // v is free below (checked above), so phi->var != v here.
      if (std::binary_search(tvars.begin(), tvars.end(), phi->var)) return false;
      return substitutable_rec(phi->f, v, tvars);
  }
  return true;
}
}  // namespace

bool substitutable(FormulaP phi, std::uint32_t v, TermP t) {
  return substitutable_rec(phi, v, term_vars_sorted(t));
}

TermP substitute_term(TermP t, std::uint32_t v, TermP repl) {
  switch (t->kind) {
    case TermKind::Var:
      return t->var == v ? repl : t;
    case TermKind::Apply: {
      TermP a = substitute_term(t->a, v, repl);
      if (arity(t->fn) == 1) return a == t->a ? t : apply1(t->fn, a);
      TermP b = substitute_term(t->b, v, repl);
      return (a == t->a && b == t->b) ? t : apply2(t->fn, a, b);
    }
    default:
      return t;
  }
}

namespace {
FormulaP substitute_rec(FormulaP phi, std::uint32_t v, TermP t) {
  if (!free_in(phi, v)) return phi;
  switch (phi->kind) {
    case FKind::Atom:
      return atom(phi->rel, substitute_term(phi->lhs, v, t), substitute_term(phi->rhs, v, t));
    case FKind::PredAtom: {
      std::vector<TermP> args;
      args.reserve(phi->args.size());
      for (TermP a : phi->args) args.push_back(substitute_term(a, v, t));
      return pred_atom(phi->pred, std::move(args));
    }
    case FKind::Not:
      return fnot(substitute_rec(phi->f, v, t));
    case FKind::And:
      return fand(substitute_rec(phi->f, v, t), substitute_rec(phi->g, v, t));
    case FKind::Or:
      return f_or(substitute_rec(phi->f, v, t), substitute_rec(phi->g, v, t));
    case FKind::Implies:
      return implies(substitute_rec(phi->f, v, t), substitute_rec(phi->g, v, t));
    case FKind::ForAll:
      return forall(phi->var, substitute_rec(phi->f, v, t));
    case FKind::Exists:
      return exists(phi->var, substitute_rec(phi->f, v, t));
  }
  return phi;
}
}  // namespace

FormulaP substitute(FormulaP phi, std::uint32_t v, TermP t) {
  if (!substitutable(phi, v, t))
    throw CaptureError("substitute: term not substitutable (variable capture)");
  return substitute_rec(phi, v, t);
}

FormulaP tau(FormulaP f) {
  static std::mutex mu;
  static std::unordered_map<FormulaP, FormulaP>* cache =
      new std::unordered_map<FormulaP, FormulaP>();
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache->find(f);
    if (it != cache->end()) return it->second;
  }
  FormulaP out = f;
  switch (f->kind) {
    case FKind::Atom:
    case FKind::PredAtom:
      out = f;
      break;
    case FKind::Not: {
      FormulaP b = tau(f->f);
      out = b == f->f ? f : fnot(b);
      break;
    }
    case FKind::And:
      out = fnot(implies(tau(f->f), fnot(tau(f->g))));
      break;
    case FKind::Or:
      out = implies(fnot(tau(f->f)), tau(f->g));
      break;
    case FKind::Implies: {
      FormulaP a = tau(f->f);
      FormulaP b = tau(f->g);
      out = (a == f->f && b == f->g) ? f : implies(a, b);
      break;
    }
    case FKind::ForAll: {
      FormulaP b = tau(f->f);
      out = b == f->f ? f : forall(f->var, b);
      break;
    }
    case FKind::Exists:
      out = fnot(forall(f->var, fnot(tau(f->f))));
      break;
  }
  std::lock_guard<std::mutex> lk(mu);
  cache->emplace(f, out);
  return out;
}

namespace {
void term_str(TermP t, std::string& out) {
  switch (t->kind) {
    case TermKind::Const:
      out += (t->cst == ConstSym::C0 ? "C0" : t->cst == ConstSym::C1 ? "C1" : "C2");
      return;
    case TermKind::Var:
      out += "v" + std::to_string(t->var);
      return;
    case TermKind::AncConst:
      out += "C" + std::to_string(t->var);
      return;
    case TermKind::Apply:
      out += fn_name(t->fn);
      out += '(';
      term_str(t->a, out);
      if (t->b) {
        out += ", ";
        term_str(t->b, out);
      }
      out += ')';
      return;
    case TermKind::DagNumeral:
      out += "dag{";
      {
        const DagTerm& d = *t->dag;
        for (std::size_t i = 0; i < d.nodes.size(); ++i) {
          if (i) out += "; ";
          out += std::to_string(i) + ": ";
          const auto& nd = d.nodes[i];
          if (nd.is_const) {
            out += (nd.cst == ConstSym::C0 ? "C0" : nd.cst == ConstSym::C1 ? "C1" : "C2");
          } else {
            out += fn_name(nd.fn);
            out += ' ' + std::to_string(nd.a);
            if (arity(nd.fn) == 2) out += ' ' + std::to_string(nd.b);
          }
        }
        out += "; root: " + std::to_string(d.root);
      }
      out += '}';
      return;
  }
}

void formula_str(FormulaP f, std::string& out) {
  switch (f->kind) {
    case FKind::Atom:
      term_str(f->lhs, out);
      out += f->rel == Rel::Eq ? " = " : " <= ";
      term_str(f->rhs, out);
      return;
    case FKind::PredAtom:
      out += pred_name(f->pred);
      out += '(';
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ", ";
        term_str(f->args[i], out);
      }
      out += ')';
      return;
    case FKind::Not:
      out += "~(";
      formula_str(f->f, out);
      out += ')';
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      out += '(';
      formula_str(f->f, out);
      out += f->kind == FKind::And ? " & " : f->kind == FKind::Or ? " | " : " -> ";
      formula_str(f->g, out);
      out += ')';
      return;
    case FKind::ForAll:
    case FKind::Exists:
      out += f->kind == FKind::ForAll ? "forall v" : "exists v";
      out += std::to_string(f->var);
      out += " (";
      formula_str(f->f, out);
      out += ')';
      return;
  }
}
}  // namespace

std::string to_string(TermP t) {
  std::string s;
  term_str(t, s);
  return s;
}

std::string to_string(FormulaP f) {
  std::string s;
  formula_str(f, s);
  return s;
}

std::string dag_to_records(const DagTerm& g) {
  std::string out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out += std::to_string(i) + ": ";
    if (n.is_const) {
      out += (n.cst == ConstSym::C0 ? "C0" : n.cst == ConstSym::C1 ? "C1" : "C2");
    } else {
      out += fn_name(n.fn);
      out += ' ' + std::to_string(n.a);
      if (arity(n.fn) == 2) out += ' ' + std::to_string(n.b);
    }
    out += '\n';
  }
  out += "root: " + std::to_string(g.root) + '\n';
  return out;
}

DagTerm dag_from_records(const std::string& text) {
  DagTerm d;
  std::istringstream in(text);
  std::string line;
  bool have_root = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "root:") {
      ls >> d.root;
      have_root = true;
      continue;
    }
    if (head.empty() || head.back() != ':')
      throw std::invalid_argument("dag record: expected 'idx:' in '" + line + "'");
    std::size_t idx = std::stoul(head.substr(0, head.size() - 1));
    if (idx != d.nodes.size())
      throw std::invalid_argument("dag record: indices must be dense and in order");
    std::string op;
    ls >> op;
    DagTerm::Node n;
    if (op == "C0" || op == "C1" || op == "C2") {
      n.is_const = true;
      n.cst = op == "C0" ? ConstSym::C0 : op == "C1" ? ConstSym::C1 : ConstSym::C2;
    } else {
      n.is_const = false;
      bool found = false;
      for (Fn f : {Fn::Sub, Fn::Div, Fn::Max, Fn::Root, Fn::Log, Fn::Count, Fn::Theta}) {
        if (op == fn_name(f)) {
          n.fn = f;
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("dag record: unknown op '" + op + "'");
      if (!(ls >> n.a)) throw std::invalid_argument("dag record: missing arg");
      if (arity(n.fn) == 2 && !(ls >> n.b))
        throw std::invalid_argument("dag record: missing second arg");
    }
    d.nodes.push_back(n);
  }
  if (!have_root) throw std::invalid_argument("dag record: missing root line");
  if (!d.well_formed()) throw std::invalid_argument("dag record: malformed dag");
  return d;
}

TermP unfold_dag(const DagTerm& g) {
  if (!g.well_formed()) throw std::invalid_argument("unfold_dag: malformed dag");
  std::vector<TermP> built(g.nodes.size(), nullptr);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.is_const) {
      built[i] = cnst(n.cst);
    } else if (arity(n.fn) == 1) {
      built[i] = apply1(n.fn, built[n.a]);
    } else {
      built[i] = apply2(n.fn, built[n.a], built[n.b]);
    }
  }
  return built[g.root];
}

}  // namespace qg::term
