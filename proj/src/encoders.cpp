#include "qg/encoders.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace qg::enc {

using namespace qg::term;
using sem::EvalContext;

namespace {
std::mutex memo_mu;
std::map<std::uint64_t, TermP>& e_memo() {
  static auto* m = new std::map<std::uint64_t, TermP>();
  return *m;
}
}  // namespace

TermP walk_max(std::uint64_t j) {
  if (j == 0) throw std::invalid_argument("walk_max: j >= 1");
  if (j == 1) return max(theta(c1()), theta(c1()));
  TermP chain = max(theta_n(c1(), 2), theta(c1()));
  for (std::uint64_t i = 3; i <= j; ++i) chain = max(theta_n(c1(), i), chain);
  return chain;
}

TermP build_E(std::uint64_t j) {
  if (j == 0) return c1();
  {
    std::lock_guard<std::mutex> lk(memo_mu);
    auto it = e_memo().find(j);
    if (it != e_memo().end()) return it->second;
  }
  TermP m = walk_max(j);
  TermP e = div(m, half_n(m, j));
  std::lock_guard<std::mutex> lk(memo_mu);
  e_memo().emplace(j, e);
  return e;
}

namespace {
// bit positions of x, most significant first
std::vector<std::uint64_t> bits_desc(const Nat& x) {
  std::vector<std::uint64_t> out;
  if (x == 0) return out;
  for (std::uint64_t k = floor_log2(x) + 1; k-- > 0;)
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(k))) out.push_back(k);
  return out;
}
}  // namespace

TermP build_tree_term(const Nat& n) {
  if (n == 0) return c0();
  if (n == 1) return c1();
  if (n == 2) return c2();
  if (is_pow2(n)) return build_E(floor_log2(n));
  std::uint64_t m = floor_log2(n) + 1;  // least power of 2 above n
  Nat rem = nat_pow2(m) - n;
  TermP t = build_E(m);
  for (std::uint64_t k : bits_desc(rem)) t = sub(t, build_E(k));
  return t;
}

std::shared_ptr<const DagTerm> build_dag_term(const Nat& n) {
  auto d = std::make_shared<DagTerm>();
  if (n <= 2) {
    DagTerm::Node c;
    c.is_const = true;
    c.cst = n == 0 ? ConstSym::C0 : n == 1 ? ConstSym::C1 : ConstSym::C2;
    d->nodes.push_back(c);
    d->root = 0;
    return d;
  }
  // M = ceil(1 + log2 n)
  std::uint64_t M = 1 + floor_log2(n) + (is_pow2(n) ? 0 : 1);
  auto cnode = [&](ConstSym c) {
    DagTerm::Node nd;
    nd.is_const = true;
    nd.cst = c;
    d->nodes.push_back(nd);
    return static_cast<std::uint32_t>(d->nodes.size() - 1);
  };
  auto op1 = [&](Fn f, std::uint32_t a) {
    DagTerm::Node nd;
    nd.is_const = false;
    nd.fn = f;
    nd.a = a;
    d->nodes.push_back(nd);
    return static_cast<std::uint32_t>(d->nodes.size() - 1);
  };
  auto op2 = [&](Fn f, std::uint32_t a, std::uint32_t b) {
    DagTerm::Node nd;
    nd.is_const = false;
    nd.fn = f;
    nd.a = a;
    nd.b = b;
    d->nodes.push_back(nd);
    return static_cast<std::uint32_t>(d->nodes.size() - 1);
  };

  cnode(ConstSym::C0);
  std::uint32_t one = cnode(ConstSym::C1);
  std::uint32_t two = cnode(ConstSym::C2);

  std::vector<std::uint32_t> A(M + 1), B(M + 1), D(M + 1), E(M + 1);
  A[0] = one;
  for (std::uint64_t j = 1; j <= M; ++j) A[j] = op1(Fn::Theta, A[j - 1]);
  B[0] = one;
  for (std::uint64_t j = 1; j <= M; ++j) B[j] = op2(Fn::Max, A[j], B[j - 1]);
  D[0] = B[M];
  for (std::uint64_t j = 1; j <= M; ++j) D[j] = op2(Fn::Div, D[j - 1], two);
  E[0] = one;
  for (std::uint64_t j = 1; j <= M; ++j) E[j] = op2(Fn::Div, D[M - j], D[M]);

  if (is_pow2(n)) {
    d->root = E[floor_log2(n)];
    return d;
  }
  std::uint64_t mtop = floor_log2(n) + 1;
  Nat rem = nat_pow2(mtop) - n;
  std::uint32_t f = E[mtop];
  for (std::uint64_t k : bits_desc(rem)) f = op2(Fn::Sub, f, E[k]);
  d->root = f;
  return d;
}

TermP build_zeta_term(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("build_zeta_term: n >= 1");
  if (n == 1) return max(theta(c0()), theta(c0()));
  TermP chain = max(theta_n(c0(), 2), theta(c0()));
  for (std::uint64_t i = 3; i <= n; ++i) chain = max(theta_n(c0(), i), chain);
  return chain;
}

TermP canonical_numeral(const Nat& n) {
  if (n <= 2) return build_tree_term(n);
  if (floor_log2(n) + 1 < kTreeNumeralBits) return build_tree_term(n);
  return dag_numeral(build_dag_term(n));
}

std::optional<std::uint64_t> match_E(TermP t) {
  if (t == c1()) return 0;
  if (t->kind != TermKind::Apply || t->fn != Fn::Div) return std::nullopt;
  // count Div-by-C2 wraps around the numerator
  TermP m = t->a;
  TermP h = t->b;
  std::uint64_t j = 0;
  while (h != m) {
    if (h->kind != TermKind::Apply || h->fn != Fn::Div || h->b != c2()) return std::nullopt;
    h = h->a;
    ++j;
    if (j > 100000) return std::nullopt;
  }
  if (j == 0) return std::nullopt;
  return t == build_E(j) ? std::optional<std::uint64_t>(j) : std::nullopt;
}

std::optional<Nat> verify_dag_numeral(const DagTerm& d) {
  if (!d.well_formed()) return std::nullopt;
  const auto& ns = d.nodes;
  if (ns.size() == 1) {
    if (!ns[0].is_const || d.root != 0) return std::nullopt;
    return Nat(static_cast<int>(ns[0].cst));
  }
  if (ns.size() < 3) return std::nullopt;
  if (!ns[0].is_const || ns[0].cst != ConstSym::C0) return std::nullopt;
  if (!ns[1].is_const || ns[1].cst != ConstSym::C1) return std::nullopt;
  if (!ns[2].is_const || ns[2].cst != ConstSym::C2) return std::nullopt;
  // A chain
  std::size_t i = 3;
  std::uint64_t M = 0;
  std::uint32_t prev = 1;
  while (i < ns.size() && !ns[i].is_const && ns[i].fn == Fn::Theta && ns[i].a == prev) {
    prev = static_cast<std::uint32_t>(i);
    ++i;
    ++M;
  }
  if (M == 0) return std::nullopt;
  auto at = [&](std::uint64_t stage, std::uint64_t j) {
    return static_cast<std::uint32_t>(2 + stage * M + j);
  };
  if (ns.size() < 3 + 4 * M) return std::nullopt;
  // B chain: B_j = max(A_j, B_{j-1}), B_0 = C1
  for (std::uint64_t j = 1; j <= M; ++j) {
    const auto& b = ns[at(1, j)];
    std::uint32_t bprev = j == 1 ? 1 : at(1, j - 1);
    if (b.is_const || b.fn != Fn::Max || b.a != at(0, j) || b.b != bprev) return std::nullopt;
  }
  // D chain: D_j = div(D_{j-1}, C2), D_0 = B_M
  for (std::uint64_t j = 1; j <= M; ++j) {
    const auto& dd = ns[at(2, j)];
    std::uint32_t dprev = j == 1 ? at(1, M) : at(2, j - 1);
    if (dd.is_const || dd.fn != Fn::Div || dd.a != dprev || dd.b != 2) return std::nullopt;
  }
  // E nodes: E_j = div(D_{M-j}, D_M)
  for (std::uint64_t j = 1; j <= M; ++j) {
    const auto& e = ns[at(3, j)];
    std::uint32_t num = (M - j) == 0 ? at(1, M) : at(2, M - j);
    if (e.is_const || e.fn != Fn::Div || e.a != num || e.b != at(2, M)) return std::nullopt;
  }
  auto e_index = [&](std::uint32_t node) -> std::optional<std::uint64_t> {
    if (node == 1) return 0;  // C1 stands for E_0
    if (node > at(3, 0) && node <= at(3, M)) return node - at(3, 0);
    return std::nullopt;
  };
  std::size_t fstart = 3 + 4 * M;
  if (fstart == ns.size()) {
    // no subtraction chain: root must be an E node (a power of 2)
    auto j = e_index(d.root);
    if (!j || *j == 0) return std::nullopt;
    return nat_pow2(*j);
  }
  // F chain: F_1 = sub(E_mtop, E_k1), F_i = sub(F_{i-1}, E_ki), k strictly
  // decreasing, root is the last node.
  if (d.root != ns.size() - 1) return std::nullopt;
  const auto& f1 = ns[fstart];
  if (f1.is_const || f1.fn != Fn::Sub) return std::nullopt;
  auto mtop = e_index(f1.a);
  auto k1 = e_index(f1.b);
  if (!mtop || !k1 || *k1 >= *mtop) return std::nullopt;
  Nat value = nat_pow2(*mtop) - nat_pow2(*k1);
  std::uint64_t prev_k = *k1;
  for (std::size_t f = fstart + 1; f < ns.size(); ++f) {
    const auto& nd = ns[f];
    if (nd.is_const || nd.fn != Fn::Sub || nd.a != f - 1) return std::nullopt;
    auto k = e_index(nd.b);
    if (!k || *k >= prev_k) return std::nullopt;
    value -= nat_pow2(*k);
    prev_k = *k;
  }
  return value;
}

std::optional<Nat> try_observable_eval(TermP t) {
  switch (t->kind) {
    case TermKind::Const:
      return Nat(static_cast<int>(t->cst));
    case TermKind::AncConst:
      return nat_pow2(t->var - 1);
    case TermKind::Var:
      return std::nullopt;
    case TermKind::DagNumeral:
      return verify_dag_numeral(*t->dag);
    case TermKind::Apply: {
      if (auto j = match_E(t)) return nat_pow2(*j);
      if (t->fn == Fn::Theta) return std::nullopt;
      auto a = try_observable_eval(t->a);
      if (!a) return std::nullopt;
      if (arity(t->fn) == 1) return sem::eval_fn(t->fn, {*a});
      auto b = try_observable_eval(t->b);
      if (!b) return std::nullopt;
      return sem::eval_fn(t->fn, {*a, *b});
    }
  }
  return std::nullopt;
}

std::uint64_t theta_depth(TermP t) {
  switch (t->kind) {
    case TermKind::Apply: {
      std::uint64_t d = theta_depth(t->a);
      if (t->b) d = std::max(d, theta_depth(t->b));
      return d + (t->fn == Fn::Theta ? 1 : 0);
    }
    default:
      return 0;
  }
}

ObservabilityVerdict check_observable(TermP t, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("check_observable: samples >= 2");
  ObservabilityVerdict v;
  v.samples = samples;
  std::uint64_t base_exp = std::max<std::uint64_t>(8, 2 * theta_depth(t));
  bool have_first = false;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t si = seed + i;
    Nat val;
    std::uint64_t exp = base_exp;
    int attempts = 0;
    while (true) {
      try {
        auto sigma = sem::sample_theta(si, exp);
        val = sem::eval_term(t, sigma);
        break;
      } catch (const sem::InterpretationExhausted&) {
        if (++attempts > 3) throw;
        exp *= 2;
      }
    }
    if (!have_first) {
      v.value = val;
      v.seed_a = si;
      have_first = true;
    } else if (val != v.value) {
      v.observed_constant = false;
      v.witness_a = v.value;
      v.witness_b = val;
      v.seed_b = si;
      return v;
    }
  }
  v.observed_constant = true;
  return v;
}

}  // namespace qg::enc
