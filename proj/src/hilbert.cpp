#include "qg/hilbert.hpp"

#include <cassert>
#include <stdexcept>

namespace qg::ded {

using namespace qg::term;

std::uint32_t ProofBuilder::push(FormulaP f, Justification j) {
  p_.steps.push_back({f, j});
  auto idx = static_cast<std::uint32_t>(p_.steps.size() - 1);
  by_tau_.emplace(tau(f), idx);
  return idx;
}

std::uint32_t ProofBuilder::logical(FormulaP f) {
  if (auto hit = find(f)) return *hit;
  auto s = is_logical_axiom(f);
  if (!s) throw std::logic_error("ProofBuilder::logical: not a logical axiom: " + to_string(f));
  return push(f, Justification::logical(*s));
}

std::uint32_t ProofBuilder::axiom(FormulaP f) {
  if (auto hit = find(f)) return *hit;
  return push(f, Justification::axiom());
}

std::uint32_t ProofBuilder::mp(std::uint32_t i, std::uint32_t j) {
  FormulaP fj = tau(p_.steps[j].formula);
  if (fj->kind != FKind::Implies || fj->f != tau(p_.steps[i].formula))
    throw std::logic_error("ProofBuilder::mp: premises do not fit");
  if (auto hit = find(fj->g)) return *hit;
  return push(fj->g, Justification::mp(i, j));
}

std::uint32_t ProofBuilder::mp_as(std::uint32_t i, std::uint32_t j, FormulaP surface) {
  FormulaP fj = tau(p_.steps[j].formula);
  if (fj->kind != FKind::Implies || fj->f != tau(p_.steps[i].formula) ||
      fj->g != tau(surface))
    throw std::logic_error("ProofBuilder::mp_as: premises do not fit surface formula");
  return push(surface, Justification::mp(i, j));
}

std::optional<std::uint32_t> ProofBuilder::find(FormulaP f) const {
  auto it = by_tau_.find(tau(f));
  if (it == by_tau_.end()) return std::nullopt;
  return it->second;
}

namespace {
Deriv::P make_node(Deriv::Node&& n) { return std::make_shared<Deriv::Node>(std::move(n)); }
}  // namespace

Deriv::P Deriv::hyp(FormulaP f) {
  Node n;
  n.k = Node::K::Hyp;
  n.f = f;
  n.uses_hyp = true;
  return make_node(std::move(n));
}

Deriv::P Deriv::logical(FormulaP f) {
  assert(is_logical_axiom(f) && "Deriv::logical: schema match failed");
  Node n;
  n.k = Node::K::Logical;
  n.f = f;
  return make_node(std::move(n));
}

Deriv::P Deriv::axiom(FormulaP f) {
  Node n;
  n.k = Node::K::Axiom;
  n.f = f;
  return make_node(std::move(n));
}

Deriv::P Deriv::external(std::uint32_t step, FormulaP f) {
  Node n;
  n.k = Node::K::External;
  n.f = f;
  n.ext = step;
  return make_node(std::move(n));
}

Deriv::P Deriv::mp(P premise, P impl) {
  FormulaP fi = impl->f;
  if (fi->kind != FKind::Implies || fi->f != premise->f)
    throw std::logic_error("Deriv::mp: premises do not fit: " + to_string(premise->f) +
                           " vs " + to_string(fi));
  Node n;
  n.k = Node::K::MP;
  n.f = fi->g;
  n.a = premise;
  n.b = impl;
  n.uses_hyp = premise->uses_hyp || impl->uses_hyp;
  return make_node(std::move(n));
}

namespace {

bool uses(const Deriv::P& n, FormulaP h) {
  if (!n->uses_hyp) return false;
  if (n->k == Deriv::Node::K::Hyp) return n->f == h;
  if (n->k == Deriv::Node::K::MP) return uses(n->a, h) || uses(n->b, h);
  return false;
}

}  // namespace

Deriv::P Deriv::discharge(P n, FormulaP h) {
  if (!uses(n, h)) {
    // f -> (h -> f), then MP
    P k = logical(implies(n->f, implies(h, n->f)));
    return mp(n, k);
  }
  if (n->k == Node::K::Hyp && n->f == h) return rules::identity(h);
  if (n->k == Node::K::MP) {
    P da = discharge(n->a, h);  // h -> A
    P db = discharge(n->b, h);  // h -> (A -> f)
    FormulaP A = n->a->f;
    P two = logical(implies(implies(h, implies(A, n->f)),
                            implies(implies(h, A), implies(h, n->f))));
    return mp(da, mp(db, two));
  }
  throw std::logic_error("Deriv::discharge: unreachable");
}

Deriv::P Deriv::generalize(P n, std::uint32_t x) {
  switch (n->k) {
    case Node::K::Hyp:
      throw std::logic_error("Deriv::generalize: open hypothesis");
    case Node::K::Logical:
      return logical(forall(x, n->f));  // closure rule
    case Node::K::Axiom:
    case Node::K::External: {
      if (free_in(n->f, x))
        throw std::logic_error("Deriv::generalize: leaf has the variable free");
      P s4 = logical(implies(n->f, forall(x, n->f)));
      return mp(n, s4);
    }
    case Node::K::MP: {
      P ga = generalize(n->a, x);
      P gb = generalize(n->b, x);
      FormulaP A = n->a->f;
      P s3 = logical(implies(forall(x, implies(A, n->f)),
                             implies(forall(x, A), forall(x, n->f))));
      return mp(ga, mp(gb, s3));
    }
  }
  throw std::logic_error("Deriv::generalize: unreachable");
}

namespace {

std::uint32_t compile_rec(const Deriv::P& n, ProofBuilder& b,
                          std::unordered_map<const Deriv::Node*, std::uint32_t>& memo) {
  if (auto hit = b.find(n->f)) return *hit;
  auto it = memo.find(n.get());
  if (it != memo.end()) return it->second;
  std::uint32_t out;
  switch (n->k) {
    case Deriv::Node::K::Hyp:
      throw std::logic_error("Deriv::compile: underived hypothesis: " + to_string(n->f));
    case Deriv::Node::K::Logical:
      out = b.logical(n->f);
      break;
    case Deriv::Node::K::Axiom:
      out = b.axiom(n->f);
      break;
    case Deriv::Node::K::External:
      out = n->ext;
      break;
    case Deriv::Node::K::MP: {
      std::uint32_t i = compile_rec(n->a, b, memo);
      std::uint32_t j = compile_rec(n->b, b, memo);
      out = b.mp(i, j);
      break;
    }
  }
  memo.emplace(n.get(), out);
  return out;
}

}  // namespace

std::uint32_t Deriv::compile(P n, ProofBuilder& b) {
  std::unordered_map<const Node*, std::uint32_t> memo;
  return compile_rec(n, b, memo);
}

std::uint32_t Deriv::compile_as(P n, ProofBuilder& b, FormulaP surface) {
  if (tau(surface) != tau(n->f))
    throw std::logic_error("Deriv::compile_as: surface formula differs");
  if (n->k == Node::K::MP) {
    std::unordered_map<const Node*, std::uint32_t> memo;
    std::uint32_t i = compile_rec(n->a, b, memo);
    std::uint32_t j = compile_rec(n->b, b, memo);
    return b.mp_as(i, j, surface);
  }
  if (n->k == Node::K::Logical) return b.logical(surface);
  if (n->k == Node::K::Axiom) return b.axiom(surface);
  return compile(n, b);
}

namespace rules {

using P = Deriv::P;

P identity(FormulaP a) {
  FormulaP aa = implies(a, a);
  P s1 = Deriv::logical(implies(a, implies(aa, a)));
  P s2 = Deriv::logical(implies(implies(a, implies(aa, a)),
                                implies(implies(a, aa), implies(a, a))));
  P s3 = Deriv::mp(s1, s2);          // (a -> (a->a)) -> (a -> a)
  P s4 = Deriv::logical(implies(a, implies(a, a)));
  return Deriv::mp(s4, s3);
}

P weaken(P nb, FormulaP a) {
  P k = Deriv::logical(implies(nb->f, implies(a, nb->f)));
  return Deriv::mp(nb, k);
}

P syllogism(P ab, P bc) {
  FormulaP a = ab->f->f;
  P habc = weaken(bc, a);  // a -> (b -> c)
  P two = Deriv::logical(implies(habc->f, implies(ab->f, implies(a, bc->f->g))));
  return Deriv::mp(ab, Deriv::mp(habc, two));
}

P dne_impl(FormulaP a) {
  FormulaP na = fnot(a);
  FormulaP nna = fnot(na);
  P h = Deriv::hyp(nna);
  P i1 = Deriv::logical(implies(nna, implies(na, nna)));
  P nanna = Deriv::mp(h, i1);  // ~a -> ~~a
  P three = Deriv::logical(implies(implies(na, nna), implies(implies(na, na), a)));
  P step = Deriv::mp(nanna, three);
  P res = Deriv::mp(identity(na), step);  // a
  return Deriv::discharge(res, nna);
}

P dni_impl(FormulaP a) {
  FormulaP na = fnot(a);
  FormulaP nna = fnot(na);
  FormulaP n3a = fnot(nna);
  P three = Deriv::logical(implies(implies(n3a, na), implies(implies(n3a, a), nna)));
  P l = dne_impl(na);  // ~~~a -> ~a
  P h = Deriv::hyp(a);
  P r = weaken(h, n3a);  // ~~~a -> a
  P res = Deriv::mp(r, Deriv::mp(l, three));
  return Deriv::discharge(res, a);
}

P dne(P nna) {
  FormulaP a = nna->f->f->f;
  return Deriv::mp(nna, dne_impl(a));
}

P dni(P na) { return Deriv::mp(na, dni_impl(na->f)); }

P efq(P a, P not_a, FormulaP t) {
  FormulaP nt = fnot(t);
  P i1 = Deriv::logical(implies(not_a->f, implies(nt, not_a->f)));
  P ntna = Deriv::mp(not_a, i1);  // ~t -> ~a
  P i2 = Deriv::logical(implies(a->f, implies(nt, a->f)));
  P nta = Deriv::mp(a, i2);  // ~t -> a
  P three = Deriv::logical(implies(ntna->f, implies(nta->f, t)));
  return Deriv::mp(nta, Deriv::mp(ntna, three));
}

P contrapose(P ab) {
  FormulaP a = ab->f->f;
  FormulaP b = ab->f->g;
  FormulaP nb = fnot(b);
  FormulaP na = fnot(a);
  P h = Deriv::hyp(nb);
  // ~~a -> b, ~~a -> ~b, then III with C := ~a
  P nnab = syllogism(dne_impl(a), ab);  // ~~a -> b
  P nnanb = weaken(h, fnot(na));        // ~~a -> ~b
  P three = Deriv::logical(implies(implies(fnot(na), nb), implies(implies(fnot(na), b), na)));
  P res = Deriv::mp(nnab, Deriv::mp(nnanb, three));
  return Deriv::discharge(res, nb);
}

P and_intro(P a, P b) {
  FormulaP fa = a->f;
  FormulaP fb = b->f;
  FormulaP impl = implies(fa, fnot(fb));  // a -> ~b
  FormulaP target = fnot(impl);
  P h = Deriv::hyp(fnot(target));  // ~~(a -> ~b)
  P got = Deriv::mp(a, dne(h));    // ~b
  P left = Deriv::discharge(got, fnot(target));   // ~~(a->~b) -> ~b
  P right = weaken(b, fnot(target));              // ~~(a->~b) -> b
  P three = Deriv::logical(implies(left->f, implies(right->f, target)));
  return Deriv::mp(right, Deriv::mp(left, three));
}

P and_elim_l(P ab) {
  // ab : ~(a -> ~b)
  FormulaP impl = ab->f->f;
  FormulaP a = impl->f;
  FormulaP nb = impl->g;
  // ~a -> (a -> ~b), by EFQ under hypotheses
  P ha = Deriv::hyp(a);
  P hna = Deriv::hyp(fnot(a));
  P inner = Deriv::discharge(efq(ha, hna, nb), a);
  P outer = Deriv::discharge(inner, fnot(a));  // ~a -> (a -> ~b)
  P cp = contrapose(outer);                    // ~(a->~b) -> ~~a
  return dne(Deriv::mp(ab, cp));
}

P and_elim_r(P ab) {
  FormulaP impl = ab->f->f;
  FormulaP a = impl->f;
  FormulaP nb = impl->g;
  FormulaP b = nb->f;
  P i = Deriv::logical(implies(nb, implies(a, nb)));  // ~b -> (a -> ~b)
  P cp = contrapose(i);                               // ~(a->~b) -> ~~b
  return dne(Deriv::mp(ab, cp));
}

P or_intro_l(P a, FormulaP b) {
  FormulaP na = fnot(a->f);
  P h = Deriv::hyp(na);
  return Deriv::discharge(efq(a, h, b), na);  // ~a -> b
}

P or_intro_r(P b, FormulaP a) { return weaken(b, fnot(a)); }

P or_elim(P or_ab, P ac, P bc) {
  // or_ab : ~a -> b
  FormulaP a = or_ab->f->f->f;
  FormulaP c = ac->f->g;
  FormulaP nc = fnot(c);
  P nc_na = contrapose(ac);                 // ~c -> ~a
  P nb_nna = contrapose(or_ab);             // ~b -> ~~a
  P nc_nb = contrapose(bc);                 // ~c -> ~b
  P nc_nna = syllogism(nc_nb, nb_nna);      // ~c -> ~~a
  P nc_a = syllogism(nc_nna, dne_impl(a));  // ~c -> a
  P three = Deriv::logical(implies(nc_na->f, implies(nc_a->f, c)));
  return Deriv::mp(nc_a, Deriv::mp(nc_na, three));
}

P not_impl(P a, P not_b) {
  FormulaP b = not_b->f->f;
  FormulaP ab = implies(a->f, b);
  P h = Deriv::hyp(ab);
  P got = Deriv::mp(a, h);                      // b
  P impl = Deriv::discharge(got, ab);           // (a->b) -> b
  P cp = contrapose(impl);                      // ~b -> ~(a->b)
  return Deriv::mp(not_b, cp);
}

P spec_inst(P all, TermP t) {
  FormulaP af = all->f;
  if (af->kind != FKind::ForAll) throw std::logic_error("spec_inst: not a universal");
  FormulaP inst = substitute(af->f, af->var, t);
  P s2 = Deriv::logical(implies(af, inst));
  return Deriv::mp(all, s2);
}

P exists_intro(P inst, std::uint32_t v, FormulaP phi, TermP t) {
  // inst proves phi[t]; target ~forall v ~phi
  FormulaP allneg = forall(v, fnot(phi));
  FormulaP notinst = fnot(inst->f);
  if (substitute(fnot(phi), v, t) != notinst)
    throw std::logic_error("exists_intro: instance mismatch");
  P s2 = Deriv::logical(implies(allneg, notinst));  // forall v ~phi -> ~phi[t]
  P cp = contrapose(s2);                            // ~~phi[t] -> ~forall v ~phi
  return Deriv::mp(dni(inst), cp);
}

}  // namespace rules

}  // namespace qg::ded
