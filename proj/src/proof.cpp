#include "qg/proof.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qg/encoders.hpp"

namespace qg::ded {

using namespace qg::term;
using godel::GoedelBytes;

const char* schema_name(SchemaId s) {
  switch (s) {
    case SchemaId::I: return "I";
    case SchemaId::II: return "II";
    case SchemaId::III: return "III";
    case SchemaId::S2: return "2";
    case SchemaId::S3: return "3";
    case SchemaId::S4: return "4";
  }
  return "?";
}

std::optional<SchemaId> schema_from_name(const std::string& s) {
  if (s == "I") return SchemaId::I;
  if (s == "II") return SchemaId::II;
  if (s == "III") return SchemaId::III;
  if (s == "2") return SchemaId::S2;
  if (s == "3") return SchemaId::S3;
  if (s == "4") return SchemaId::S4;
  return std::nullopt;
}

namespace {

bool is_impl(FormulaP f) { return f->kind == FKind::Implies; }
bool is_neg(FormulaP f) { return f->kind == FKind::Not; }

// I. B -> (C -> B)
bool match_I(FormulaP s) {
  return is_impl(s) && is_impl(s->g) && s->g->g == s->f;
}

// II. [B -> (C -> D)] -> [(B -> C) -> (B -> D)]
bool match_II(FormulaP s) {
  if (!is_impl(s) || !is_impl(s->f) || !is_impl(s->g)) return false;
  FormulaP lhs = s->f;  // B -> (C -> D)
  if (!is_impl(lhs->g)) return false;
  FormulaP B = lhs->f;
  FormulaP C = lhs->g->f;
  FormulaP D = lhs->g->g;
  FormulaP r1 = s->g->f;  // B -> C
  FormulaP r2 = s->g->g;  // B -> D
  return is_impl(r1) && is_impl(r2) && r1->f == B && r1->g == C && r2->f == B && r2->g == D;
}

// III. [(~C) -> (~B)] -> {[(~C) -> B] -> C}
bool match_III(FormulaP s) {
  if (!is_impl(s) || !is_impl(s->f) || !is_impl(s->g)) return false;
  FormulaP l = s->f;  // ~C -> ~B
  if (!is_neg(l->f) || !is_neg(l->g)) return false;
  FormulaP C = l->f->f;
  FormulaP B = l->g->f;
  FormulaP r = s->g;  // (~C -> B) -> C
  if (!is_impl(r) || !is_impl(r->f)) return false;
  return r->f->f == l->f && r->f->g == B && r->g == C;
}

// Infers the witness term t of a schema-2 instance by anti-unifying body
// against rhs at the free positions of x.
bool infer_term(TermP bt, TermP rt, std::uint32_t x, bool shadowed, TermP& cand);

bool infer_formula(FormulaP bf, FormulaP rf, std::uint32_t x, bool shadowed, TermP& cand) {
  if (shadowed || !free_in(bf, x)) return bf == rf;
  if (bf->kind != rf->kind) return false;
  switch (bf->kind) {
    case FKind::Atom:
      return bf->rel == rf->rel && infer_term(bf->lhs, rf->lhs, x, shadowed, cand) &&
             infer_term(bf->rhs, rf->rhs, x, shadowed, cand);
    case FKind::PredAtom: {
      if (bf->pred != rf->pred || bf->args.size() != rf->args.size()) return false;
      for (std::size_t i = 0; i < bf->args.size(); ++i)
        if (!infer_term(bf->args[i], rf->args[i], x, shadowed, cand)) return false;
      return true;
    }
    case FKind::Not:
      return infer_formula(bf->f, rf->f, x, shadowed, cand);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return infer_formula(bf->f, rf->f, x, shadowed, cand) &&
             infer_formula(bf->g, rf->g, x, shadowed, cand);
    case FKind::ForAll:
    case FKind::Exists:
      if (bf->var != rf->var) return false;
      return infer_formula(bf->f, rf->f, x, shadowed || bf->var == x, cand);
  }
  return false;
}

bool infer_term(TermP bt, TermP rt, std::uint32_t x, bool shadowed, TermP& cand) {
  if (!shadowed && bt->kind == TermKind::Var && bt->var == x) {
    if (cand == nullptr) {
      cand = rt;
      return true;
    }
    return cand == rt;
  }
  if (bt->kind != rt->kind) return false;
  switch (bt->kind) {
    case TermKind::Apply:
      if (bt->fn != rt->fn) return false;
      if (!infer_term(bt->a, rt->a, x, shadowed, cand)) return false;
      return bt->b == nullptr || infer_term(bt->b, rt->b, x, shadowed, cand);
    default:
      return bt == rt;
  }
}

// 2. forall x phi(x) -> phi(t), t substitutable for x in phi
bool match_S2(FormulaP s) {
  if (!is_impl(s) || s->f->kind != FKind::ForAll) return false;
  std::uint32_t x = s->f->var;
  FormulaP body = s->f->f;
  FormulaP rhs = s->g;
  if (!free_in(body, x)) return rhs == body;
  TermP cand = nullptr;
  if (!infer_formula(body, rhs, x, false, cand)) return false;
  if (cand == nullptr) return rhs == body;
  if (!substitutable(body, x, cand)) return false;
  return substitute(body, x, cand) == rhs;
}

// 3. forall x (phi -> psi) -> (forall x phi -> forall x psi)
bool match_S3(FormulaP s) {
  if (!is_impl(s) || s->f->kind != FKind::ForAll || !is_impl(s->f->f)) return false;
  std::uint32_t x = s->f->var;
  FormulaP phi = s->f->f->f;
  FormulaP psi = s->f->f->g;
  FormulaP r = s->g;
  if (!is_impl(r) || r->f->kind != FKind::ForAll || r->g->kind != FKind::ForAll) return false;
  return r->f->var == x && r->f->f == phi && r->g->var == x && r->g->f == psi;
}

// 4. psi -> forall x psi, x not free in psi
bool match_S4(FormulaP s) {
  if (!is_impl(s) || s->g->kind != FKind::ForAll) return false;
  return s->g->f == s->f && !free_in(s->f, s->g->var);
}

}  // namespace

std::optional<SchemaId> is_logical_axiom(FormulaP phi) {
  FormulaP s = tau(phi);
  while (s->kind == FKind::ForAll) s = s->f;  // closure rule
  if (match_I(s)) return SchemaId::I;
  if (match_II(s)) return SchemaId::II;
  if (match_III(s)) return SchemaId::III;
  if (match_S2(s)) return SchemaId::S2;
  if (match_S3(s)) return SchemaId::S3;
  if (match_S4(s)) return SchemaId::S4;
  return std::nullopt;
}

GoedelBytes Proof::bytes() const {
  std::vector<FormulaP> fs;
  fs.reserve(steps.size());
  for (const auto& s : steps) fs.push_back(s.formula);
  return godel::encode_proof(fs);
}

bool AxiomSystemSpec::recognizer(const GoedelBytes& b) const {
  try {
    return accepts(godel::decode_formula(b));
  } catch (const godel::MalformedBytes&) {
    return false;
  }
}

AxiomSystemSpec AxiomSystemSpec::with_extra_axiom(FormulaP extra) const {
  AxiomSystemSpec out;
  out.name = name + "+1";
  auto base_accepts = accepts;
  FormulaP tx = tau(extra);
  out.accepts = [base_accepts, tx](FormulaP f) { return tau(f) == tx || base_accepts(f); };
  if (enumerator) {
    out.enumerator = enumerator;
    out.enumerator->push_back(extra);
  }
  return out;
}

namespace {

// Shared engine: checks justifiability step by step; when `annotated` the
// recorded justification must itself be the one that holds.
Verdict check_impl(const std::vector<FormulaP>& steps, const AxiomSystemSpec& alpha,
                   const Proof* annotated) {
  Verdict v;
  if (steps.empty()) {
    v.reason = "empty proof";
    return v;
  }
  // tau-form -> earliest step index
  std::unordered_map<FormulaP, std::uint32_t> seen;
  // consequent tau-form -> (step index of implication, antecedent tau-form)
  std::unordered_multimap<FormulaP, std::pair<std::uint32_t, FormulaP>> impls;

  for (std::uint32_t k = 0; k < steps.size(); ++k) {
    FormulaP f = steps[k];
    FormulaP tf = tau(f);
    bool ok = false;
    std::string why;

    if (annotated) {
      const Justification& j = annotated->steps[k].just;
      switch (j.kind) {
        case Justification::Kind::LogicalAxiom: {
          auto s = is_logical_axiom(f);
          ok = s.has_value() && *s == j.schema;
          if (!ok) why = "recorded logical-axiom schema does not match";
          break;
        }
        case Justification::Kind::ProperAxiom:
          ok = alpha.accepts(f);
          if (!ok) why = "recognizer rejects recorded proper axiom";
          break;
        case Justification::Kind::ModusPonens: {
          if (j.i >= k || j.j >= k) {
            why = "modus ponens cites a later step";
            break;
          }
          FormulaP ti = tau(steps[j.i]);
          FormulaP tj = tau(steps[j.j]);
          ok = tj->kind == FKind::Implies && tj->f == ti && tj->g == tf;
          if (!ok) why = "modus ponens premises do not fit";
          break;
        }
      }
    } else {
      if (is_logical_axiom(f)) {
        ok = true;
      } else if (alpha.accepts(f)) {
        ok = true;
      } else {
        auto range = impls.equal_range(tf);
        for (auto it = range.first; it != range.second; ++it) {
          if (seen.count(it->second.second)) {
            ok = true;
            break;
          }
        }
        if (!ok) why = "step is not an axiom and no modus ponens premises exist";
      }
    }

    if (!ok) {
      v.valid = false;
      v.step = k;
      v.reason = why.empty() ? "unjustified step" : why;
      return v;
    }
    seen.emplace(tf, k);
    if (tf->kind == FKind::Implies) impls.emplace(tf->g, std::make_pair(k, tf->f));
  }
  v.valid = true;
  v.theorem = steps.back();
  return v;
}

}  // namespace

Verdict check_steps(const std::vector<FormulaP>& steps, const AxiomSystemSpec& alpha) {
  return check_impl(steps, alpha, nullptr);
}

Verdict check_proof(const Proof& p, const AxiomSystemSpec& alpha) {
  std::vector<FormulaP> fs;
  fs.reserve(p.steps.size());
  for (const auto& s : p.steps) fs.push_back(s.formula);
  return check_impl(fs, alpha, &p);
}

bool subst_predicate(const GoedelBytes& g, const GoedelBytes& h) {
  FormulaP gamma;
  FormulaP target;
  try {
    gamma = godel::decode_formula(g);
    target = godel::decode_formula(h);
  } catch (const godel::MalformedBytes&) {
    return false;
  }
  TermP numeral = enc::canonical_numeral(godel::godel_number(g));
  FormulaP expected = gamma;
  for (std::uint32_t v : gamma->free_vars) expected = substitute(expected, v, numeral);
  return expected == target;
}

bool ex_prf(const GoedelBytes& h, const GoedelBytes& t, const GoedelBytes& p,
            const AxiomSystemSpec& base) {
  FormulaP extra;
  FormulaP theorem;
  std::vector<FormulaP> steps;
  try {
    extra = godel::decode_formula(h);
    theorem = godel::decode_formula(t);
    steps = godel::decode_proof(p);
  } catch (const godel::MalformedBytes&) {
    return false;
  }
  Verdict v = check_steps(steps, base.with_extra_axiom(extra));
  return v.valid && v.theorem == theorem;
}

bool subst_prf(const GoedelBytes& g, const GoedelBytes& t, const GoedelBytes& p,
               const AxiomSystemSpec& base) {
  FormulaP theorem;
  std::vector<FormulaP> steps;
  try {
    theorem = godel::decode_formula(t);
    steps = godel::decode_proof(p);
  } catch (const godel::MalformedBytes&) {
    return false;
  }
  Verdict direct = check_steps(steps, base);
  if (direct.valid && direct.theorem == theorem) return true;
  // Any added axiom actually used must appear as a step, and a step's
  // encoding is always numerically below the whole proof's.
  std::unordered_set<FormulaP> tried;
  for (FormulaP f : steps) {
    if (!tried.insert(f).second) continue;
    if (!subst_predicate(g, godel::encode(f))) continue;
    Verdict v = check_steps(steps, base.with_extra_axiom(f));
    if (v.valid && v.theorem == theorem) return true;
  }
  return false;
}

GoedelBytes bytes_from_number(const Nat& n) {
  GoedelBytes b;
  if (n == 0) {
    b.bytes.push_back(0);
    return b;
  }
  Nat x = n;
  while (x > 0) {
    b.bytes.push_back(static_cast<godel::Byte>(x & 63));
    x >>= 6;
  }
  std::reverse(b.bytes.begin(), b.bytes.end());
  return b;
}

bool hilb_prf(const Nat& theorem_number, const Nat& proof_number, const AxiomSystemSpec& sys) {
  GoedelBytes t = bytes_from_number(theorem_number);
  GoedelBytes p = bytes_from_number(proof_number);
  FormulaP theorem;
  std::vector<FormulaP> steps;
  try {
    theorem = godel::decode_formula(t);
    steps = godel::decode_proof(p);
  } catch (const godel::MalformedBytes&) {
    return false;
  }
  Verdict v = check_steps(steps, sys);
  return v.valid && v.theorem == theorem;
}

FormulaP diagonalize(FormulaP gamma) {
  if (gamma->free_vars.size() != 1)
    throw std::invalid_argument("diagonalize: formula must have exactly one free variable");
  GoedelBytes g = godel::encode(gamma);
  Nat n = godel::godel_number(g);
  return substitute(gamma, gamma->free_vars[0], enc::canonical_numeral(n));
}

std::string justifications_to_text(const Proof& p) {
  std::string out;
  for (std::uint32_t k = 0; k < p.steps.size(); ++k) {
    const Justification& j = p.steps[k].just;
    out += std::to_string(k);
    switch (j.kind) {
      case Justification::Kind::LogicalAxiom:
        out += std::string(" LOG ") + schema_name(j.schema);
        break;
      case Justification::Kind::ProperAxiom:
        out += " AX";
        break;
      case Justification::Kind::ModusPonens:
        out += " MP " + std::to_string(j.i) + " " + std::to_string(j.j);
        break;
    }
    out += '\n';
  }
  return out;
}

Proof proof_from_parts(const std::vector<FormulaP>& steps, const std::string& just_text) {
  Proof p;
  p.steps.reserve(steps.size());
  for (FormulaP f : steps) p.steps.push_back({f, Justification::axiom()});
  std::istringstream in(just_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint32_t k;
    std::string kind;
    if (!(ls >> k >> kind) || k >= p.steps.size())
      throw std::invalid_argument("justification line out of range: " + line);
    if (kind == "LOG") {
      std::string s;
      ls >> s;
      auto id = schema_from_name(s);
      if (!id) throw std::invalid_argument("unknown schema in: " + line);
      p.steps[k].just = Justification::logical(*id);
    } else if (kind == "AX") {
      p.steps[k].just = Justification::axiom();
    } else if (kind == "MP") {
      std::uint32_t i, j;
      if (!(ls >> i >> j)) throw std::invalid_argument("bad MP line: " + line);
      p.steps[k].just = Justification::mp(i, j);
    } else {
      throw std::invalid_argument("unknown justification kind: " + line);
    }
  }
  return p;
}

}  // namespace qg::ded
