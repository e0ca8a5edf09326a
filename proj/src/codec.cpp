#include "qg/codec.hpp"

#include <memory>

namespace qg::godel {

using namespace qg::term;

namespace {

Byte fn_code(Fn f) {
  switch (f) {
    case Fn::Sub: return kSub;
    case Fn::Div: return kDiv;
    case Fn::Max: return kMax;
    case Fn::Root: return kRoot;
    case Fn::Log: return kLog;
    case Fn::Count: return kCount;
    case Fn::Theta: return kTheta;
  }
  throw std::logic_error("fn_code");
}

void emit_number(std::vector<Byte>& out, std::uint64_t j) {
  out.push_back(kVhat);
  std::uint64_t d = var_digit_count(j);
  for (std::uint64_t i = d; i-- > 0;)
    out.push_back(static_cast<Byte>((j >> (5 * i)) & 31));
}

void emit_term(std::vector<Byte>& out, TermP t) {
  switch (t->kind) {
    case TermKind::Const:
      out.push_back(static_cast<Byte>(kC0 + static_cast<int>(t->cst)));
      return;
    case TermKind::Var:
      emit_number(out, t->var);
      return;
    case TermKind::AncConst:
      throw std::invalid_argument("encode: ANC constants are not part of the byte format");
    case TermKind::Apply:
      out.push_back(fn_code(t->fn));
      out.push_back(kLParen);
      emit_term(out, t->a);
      if (t->b) {
        out.push_back(kComma);
        emit_term(out, t->b);
      }
      out.push_back(kRParen);
      return;
    case TermKind::DagNumeral: {
      const DagTerm& d = *t->dag;
      out.push_back(kDagLit);
      out.push_back(kLParen);
      emit_number(out, d.nodes.size());
      for (const auto& n : d.nodes) {
        if (n.is_const) {
          out.push_back(static_cast<Byte>(kC0 + static_cast<int>(n.cst)));
        } else {
          out.push_back(fn_code(n.fn));
          emit_number(out, n.a);
          if (arity(n.fn) == 2) emit_number(out, n.b);
        }
      }
      emit_number(out, d.root);
      out.push_back(kRParen);
      return;
    }
  }
}

void emit_formula(std::vector<Byte>& out, FormulaP f) {
  switch (f->kind) {
    case FKind::Atom:
      out.push_back(f->rel == Rel::Eq ? kEq : kLeq);
      out.push_back(kLParen);
      emit_term(out, f->lhs);
      out.push_back(kComma);
      emit_term(out, f->rhs);
      out.push_back(kRParen);
      return;
    case FKind::PredAtom:
      if (f->pred == PredSym::Add || f->pred == PredSym::Mult)
        throw std::invalid_argument("encode: arithmetic sugar atoms are not part of the byte format");
      out.push_back(f->pred == PredSym::HilbPrf ? kHilbPrf : kSubstPrf);
      out.push_back(kLParen);
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out.push_back(kComma);
        emit_term(out, f->args[i]);
      }
      out.push_back(kRParen);
      return;
    case FKind::Not:
      out.push_back(kNot);
      out.push_back(kLParen);
      emit_formula(out, f->f);
      out.push_back(kRParen);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      out.push_back(f->kind == FKind::And ? kAnd : f->kind == FKind::Or ? kOr : kImplies);
      out.push_back(kLParen);
      emit_formula(out, f->f);
      out.push_back(kComma);
      emit_formula(out, f->g);
      out.push_back(kRParen);
      return;
    case FKind::ForAll:
    case FKind::Exists:
      out.push_back(f->kind == FKind::ForAll ? kForAll : kExists);
      emit_number(out, f->var);
      out.push_back(kLParen);
      emit_formula(out, f->f);
      out.push_back(kRParen);
      return;
  }
}

class Reader {
 public:
  explicit Reader(const GoedelBytes& b) : b_(b.bytes) {}

  bool eof() const { return pos_ >= b_.size(); }
  std::size_t pos() const { return pos_; }

  Byte peek() const {
    if (pos_ >= b_.size()) throw MalformedBytes("unexpected end of bytes", pos_);
    return b_[pos_];
  }

  Byte take() {
    Byte v = peek();
    ++pos_;
    return v;
  }

  void expect(Byte s, const char* what) {
    if (peek() != s) throw MalformedBytes(std::string("expected ") + what, pos_);
    ++pos_;
  }

  std::uint64_t number() {
    expect(kVhat, "number marker");
    if (eof() || b_[pos_] > 31) throw MalformedBytes("expected digit", pos_);
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (!eof() && b_[pos_] <= 31) {
      if (++digits > 13) throw MalformedBytes("number too long", pos_);
      v = (v << 5) | b_[pos_];
      ++pos_;
    }
    return v;
  }

  TermP term() {
    Byte s = peek();
    if (s >= kC0 && s <= kC2) {
      ++pos_;
      return cnst(static_cast<ConstSym>(s - kC0));
    }
    if (s == kVhat) return qg::term::var(static_cast<std::uint32_t>(number()));
    if (s >= kSub && s <= kTheta) {
      ++pos_;
      Fn f = static_cast<Fn>(s - kSub);
      expect(kLParen, "'('");
      TermP a = term();
      if (arity(f) == 1) {
        expect(kRParen, "')'");
        return apply1(f, a);
      }
      expect(kComma, "','");
      TermP b = term();
      expect(kRParen, "')'");
      return apply2(f, a, b);
    }
    if (s == kDagLit) {
      ++pos_;
      expect(kLParen, "'('");
      std::uint64_t n = number();
      if (n == 0 || n > (1ull << 32)) throw MalformedBytes("bad dag node count", pos_);
      auto d = std::make_shared<DagTerm>();
      d->nodes.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        Byte op = peek();
        DagTerm::Node nd;
        if (op >= kC0 && op <= kC2) {
          ++pos_;
          nd.is_const = true;
          nd.cst = static_cast<ConstSym>(op - kC0);
        } else if (op >= kSub && op <= kTheta) {
          ++pos_;
          nd.is_const = false;
          nd.fn = static_cast<Fn>(op - kSub);
          std::uint64_t a = number();
          if (a >= i) throw MalformedBytes("dag arg must reference earlier node", pos_);
          nd.a = static_cast<std::uint32_t>(a);
          if (arity(nd.fn) == 2) {
            std::uint64_t b2 = number();
            if (b2 >= i) throw MalformedBytes("dag arg must reference earlier node", pos_);
            nd.b = static_cast<std::uint32_t>(b2);
          }
        } else {
          throw MalformedBytes("bad dag node opcode", pos_);
        }
        d->nodes.push_back(nd);
      }
      std::uint64_t root = number();
      if (root >= n) throw MalformedBytes("dag root out of range", pos_);
      d->root = static_cast<std::uint32_t>(root);
      expect(kRParen, "')'");
      return dag_numeral(std::move(d));
    }
    throw MalformedBytes("expected term", pos_);
  }

  FormulaP formula() {
    Byte s = peek();
    switch (s) {
      case kEq:
      case kLeq: {
        ++pos_;
        expect(kLParen, "'('");
        TermP l = term();
        expect(kComma, "','");
        TermP r = term();
        expect(kRParen, "')'");
        return atom(s == kEq ? Rel::Eq : Rel::Leq, l, r);
      }
      case kHilbPrf:
      case kSubstPrf: {
        ++pos_;
        PredSym p = s == kHilbPrf ? PredSym::HilbPrf : PredSym::SubstPrf;
        expect(kLParen, "'('");
        std::vector<TermP> args;
        args.push_back(term());
        while (peek() == kComma) {
          ++pos_;
          args.push_back(term());
        }
        expect(kRParen, "')'");
        if (static_cast<int>(args.size()) != pred_arity(p))
          throw MalformedBytes("recognizer atom arity", pos_);
        return pred_atom(p, std::move(args));
      }
      case kNot: {
        ++pos_;
        expect(kLParen, "'('");
        FormulaP f = formula();
        expect(kRParen, "')'");
        return fnot(f);
      }
      case kAnd:
      case kOr:
      case kImplies: {
        ++pos_;
        expect(kLParen, "'('");
        FormulaP f = formula();
        expect(kComma, "','");
        FormulaP g = formula();
        expect(kRParen, "')'");
        return s == kAnd ? fand(f, g) : s == kOr ? f_or(f, g) : implies(f, g);
      }
      case kForAll:
      case kExists: {
        ++pos_;
        auto v = static_cast<std::uint32_t>(number());
        expect(kLParen, "'('");
        FormulaP f = formula();
        expect(kRParen, "')'");
        return s == kForAll ? forall(v, f) : exists(v, f);
      }
      default:
        throw MalformedBytes("expected formula", pos_);
    }
  }

 private:
  const std::vector<Byte>& b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t var_digit_count(std::uint64_t j) {
  // max(1, ceil(log32(j+1))): smallest d >= 1 with 32^d >= j+1
  std::uint64_t d = 1;
  Nat cap = 32;
  while (cap < Nat(j) + 1) {
    cap *= 32;
    ++d;
  }
  return d;
}

GoedelBytes encode(TermP t) {
  GoedelBytes b;
  emit_term(b.bytes, t);
  return b;
}

GoedelBytes encode(FormulaP f) {
  GoedelBytes b;
  emit_formula(b.bytes, f);
  return b;
}

GoedelBytes encode_proof(const std::vector<FormulaP>& steps) {
  GoedelBytes b;
  for (FormulaP f : steps) {
    emit_formula(b.bytes, f);
    b.bytes.push_back(kPeriod);
  }
  return b;
}

TermP decode_term(const GoedelBytes& b) {
  Reader r(b);
  TermP t = r.term();
  if (!r.eof()) throw MalformedBytes("trailing bytes after term", r.pos());
  return t;
}

FormulaP decode_formula(const GoedelBytes& b) {
  Reader r(b);
  FormulaP f = r.formula();
  if (!r.eof()) throw MalformedBytes("trailing bytes after formula", r.pos());
  return f;
}

std::vector<FormulaP> decode_proof(const GoedelBytes& b) {
  Reader r(b);
  std::vector<FormulaP> steps;
  while (!r.eof()) {
    steps.push_back(r.formula());
    r.expect(kPeriod, "'.'");
  }
  return steps;
}

Decoded decode(const GoedelBytes& b) {
  if (b.bytes.empty()) throw MalformedBytes("empty byte string", 0);
  for (Byte x : b.bytes)
    if (x == kPeriod) return ProofBytes{decode_proof(b)};
  Byte first = b.bytes.front();
  bool is_term = (first >= kC0 && first <= kC2) || first == kVhat ||
                 (first >= kSub && first <= kTheta) || first == kDagLit;
  if (is_term) return decode_term(b);
  return decode_formula(b);
}

Nat godel_number(const GoedelBytes& b) {
  Nat n = 0;
  for (Byte x : b.bytes) {
    n <<= 6;
    n += x;
  }
  return n;
}

std::string pack_g64(const GoedelBytes& b) {
  std::string out = "QG64";
  out.push_back(static_cast<char>(1));  // version
  std::uint32_t n = static_cast<std::uint32_t>(b.bytes.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
  std::uint32_t acc = 0;
  int have = 0;
  for (Byte x : b.bytes) {
    acc = (acc << 6) | x;
    if (++have == 4) {
      out.push_back(static_cast<char>((acc >> 16) & 0xff));
      out.push_back(static_cast<char>((acc >> 8) & 0xff));
      out.push_back(static_cast<char>(acc & 0xff));
      acc = 0;
      have = 0;
    }
  }
  if (have) {
    acc <<= 6 * (4 - have);  // zero-pad the last group
    out.push_back(static_cast<char>((acc >> 16) & 0xff));
    if (have >= 2) out.push_back(static_cast<char>((acc >> 8) & 0xff));
    if (have >= 3) out.push_back(static_cast<char>(acc & 0xff));
  }
  return out;
}

GoedelBytes unpack_g64(const std::string& data) {
  if (data.size() < 9 || data.compare(0, 4, "QG64") != 0)
    throw MalformedBytes("bad .g64 magic", 0);
  if (data[4] != 1) throw MalformedBytes("unsupported .g64 version", 4);
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n = (n << 8) | static_cast<std::uint8_t>(data[5 + i]);
  GoedelBytes b;
  b.bytes.reserve(n);
  std::uint32_t acc = 0;
  int bits = 0;
  std::size_t pos = 9;
  while (b.bytes.size() < n) {
    if (bits < 6) {
      if (pos >= data.size()) throw MalformedBytes("truncated .g64 payload", pos);
      acc = (acc << 8) | static_cast<std::uint8_t>(data[pos++]);
      bits += 8;
    }
    b.bytes.push_back(static_cast<Byte>((acc >> (bits - 6)) & 63));
    bits -= 6;
  }
  return b;
}

}  // namespace qg::godel
