#include "metawb/presburger.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace metawb::presburger {

using syntax::Formula;
using FK = Formula::Kind;

// ---------------------------------------------------------------------------
// Linear forms

Integer Linear::at(unsigned v) const {
  auto it = coef.find(v);
  return it == coef.end() ? Integer(0) : it->second;
}

namespace {

void put(Linear& l, unsigned v, const Integer& c) {
  if (c == 0)
    l.coef.erase(v);
  else
    l.coef[v] = c;
}

Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

Integer gcd_int(Integer a, Integer b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Integer lcm_int(const Integer& a, const Integer& b) { return abs_int(a) / gcd_int(a, b) * abs_int(b); }

// Rounds toward negative infinity; b > 0.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Integer mod_pos(const Integer& a, const Integer& d) {
  Integer r = a % d;
  return r < 0 ? Integer(r + d) : r;
}

Linear var_form(unsigned v, const Integer& c = 1) {
  Linear l;
  put(l, v, c);
  return l;
}

Linear const_form(const Integer& k) {
  Linear l;
  l.constant = k;
  return l;
}

}  // namespace

Linear operator+(const Linear& a, const Linear& b) {
  Linear r = a;
  for (const auto& [v, c] : b.coef) put(r, v, r.at(v) + c);
  r.constant += b.constant;
  return r;
}

Linear operator*(const Integer& k, const Linear& a) {
  Linear r;
  if (k == 0) return r;
  for (const auto& [v, c] : a.coef) r.coef[v] = k * c;
  r.constant = k * a.constant;
  return r;
}

Linear operator-(const Linear& a, const Linear& b) { return a + Integer(-1) * b; }

// ---------------------------------------------------------------------------
// Formulas

struct PFormula::Node {
  Kind kind;
  presburger::Atom atom;
  std::vector<PFormula> parts;
  unsigned var = 0;
};

PFormula PFormula::truth(bool b) {
  return PFormula(std::make_shared<const Node>(Node{b ? Kind::True : Kind::False, {}, {}, 0}));
}
PFormula PFormula::atom(presburger::Atom a) {
  return PFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, 0}));
}
PFormula PFormula::negation(PFormula f) {
  return PFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}, 0}));
}
PFormula PFormula::conj(std::vector<PFormula> fs) {
  return PFormula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(fs), 0}));
}
PFormula PFormula::disj(std::vector<PFormula> fs) {
  return PFormula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(fs), 0}));
}
PFormula PFormula::exists(unsigned v, PFormula body) {
  return PFormula(std::make_shared<const Node>(Node{Kind::Exists, {}, {std::move(body)}, v}));
}
PFormula PFormula::forall(unsigned v, PFormula body) {
  return PFormula(std::make_shared<const Node>(Node{Kind::Forall, {}, {std::move(body)}, v}));
}

PFormula::Kind PFormula::kind() const { return node_->kind; }
const Atom& PFormula::atom() const { return node_->atom; }
const std::vector<PFormula>& PFormula::parts() const { return node_->parts; }
unsigned PFormula::var() const { return node_->var; }

bool PFormula::is_quantifier_free() const {
  if (kind() == Kind::Exists || kind() == Kind::Forall) return false;
  return std::all_of(parts().begin(), parts().end(), [](const PFormula& p) { return p.is_quantifier_free(); });
}

bool operator==(const PFormula& a, const PFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.var() != b.var() || !(a.atom() == b.atom()) || a.parts().size() != b.parts().size())
    return false;
  for (std::size_t i = 0; i < a.parts().size(); ++i)
    if (!(a.parts()[i] == b.parts()[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Conversion

namespace {

Linear linear_of(const syntax::Term& t) {
  using TK = syntax::Term::Kind;
  switch (t.kind()) {
    case TK::Zero: return {};
    case TK::Var: return var_form(t.var_id().index);
    case TK::Succ: {
      Integer n = 0;
      const syntax::Term* cur = &t;
      while (cur->kind() == TK::Succ) {
        ++n;
        cur = &cur->lhs();
      }
      return linear_of(*cur) + const_form(n);
    }
    case TK::Plus: return linear_of(t.lhs()) + linear_of(t.rhs());
    case TK::Times: throw std::invalid_argument("multiplication is outside the additive language");
  }
  return {};
}

PFormula pos(Linear t) { return PFormula::atom(Atom{Atom::Kind::Pos, 0, std::move(t)}); }

}  // namespace

PFormula from_formula(const Formula& f) {
  switch (f.kind()) {
    case FK::Eq: {
      Linear a = linear_of(f.left_term()), b = linear_of(f.right_term());
      return PFormula::conj({pos(b - a + const_form(1)), pos(a - b + const_form(1))});
    }
    case FK::Lt: return pos(linear_of(f.right_term()) - linear_of(f.left_term()));
    case FK::Mem: throw std::invalid_argument("membership is outside the additive language");
    case FK::Not: return PFormula::negation(from_formula(f.sub()));
    case FK::Or: return PFormula::disj({from_formula(f.sub()), from_formula(f.right())});
    case FK::And: return PFormula::conj({from_formula(f.sub()), from_formula(f.right())});
    case FK::Implies:
      return PFormula::disj({PFormula::negation(from_formula(f.sub())), from_formula(f.right())});
    case FK::Iff: {
      PFormula a = from_formula(f.sub()), b = from_formula(f.right());
      return PFormula::conj({PFormula::disj({PFormula::negation(a), b}), PFormula::disj({PFormula::negation(b), a})});
    }
    case FK::Exists: return PFormula::exists(f.bound().index, from_formula(f.sub()));
    case FK::Forall: return PFormula::forall(f.bound().index, from_formula(f.sub()));
  }
  throw std::invalid_argument("unknown formula");
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string nat_term(const Linear& l) {
  // l has nonnegative coefficients and constant.
  std::string sum;
  for (const auto& [v, c] : l.coef) {
    if (!sum.empty()) sum += " + ";
    sum += (c == 1 ? "" : c.str() + "*") + "x" + std::to_string(v);
  }
  const Integer& k = l.constant;
  if (k > 8) return sum.empty() ? k.str() : sum + " + " + k.str();
  std::string inner = sum.empty() ? "0" : sum;
  for (Integer i = 0; i < k; ++i) inner = "S(" + inner + ")";
  return inner;
}

void split(const Linear& t, Linear& p, Linear& n) {
  for (const auto& [v, c] : t.coef) (c > 0 ? p : n).coef[v] = abs_int(c);
  (t.constant > 0 ? p : n).constant = abs_int(t.constant);
}

std::string atom_string(const Atom& a) {
  Linear p, n;
  split(a.t, p, n);
  if (a.kind == Atom::Kind::Pos) return nat_term(n) + " < " + nat_term(p);
  std::string body = nat_term(p);
  if (!(n == Linear{})) body += " - " + nat_term(n);
  std::string s = a.d.str() + " | " + body;
  return a.kind == Atom::Kind::Div ? s : "~(" + s + ")";
}

std::string pf_string(const PFormula& f, bool nested) {
  using K = PFormula::Kind;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: {
      std::string s = atom_string(f.atom());
      return nested && f.atom().kind == Atom::Kind::Div ? "(" + s + ")" : s;
    }
    case K::Not: return "~(" + pf_string(f.parts()[0], false) + ")";
    case K::And:
    case K::Or: {
      if (f.parts().empty()) return f.kind() == K::And ? "true" : "false";
      std::string s;
      for (std::size_t i = 0; i < f.parts().size(); ++i) {
        if (i) s += f.kind() == K::And ? " /\\ " : " \\/ ";
        s += pf_string(f.parts()[i], true);
      }
      return nested && f.parts().size() > 1 ? "(" + s + ")" : s;
    }
    case K::Exists:
    case K::Forall: {
      std::string s = std::string(f.kind() == K::Exists ? "exists" : "forall") + " x" + std::to_string(f.var()) +
                      ". " + pf_string(f.parts()[0], true);
      return nested ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string to_string(const PFormula& f) { return pf_string(f, false); }

// ---------------------------------------------------------------------------
// Normalization

namespace {

using K = PFormula::Kind;

PFormula normalize_atom(Atom a) {
  if (a.kind == Atom::Kind::Pos) {
    if (a.t.is_constant()) return PFormula::truth(a.t.constant > 0);
    Integer g = 0;
    for (const auto& [v, c] : a.t.coef) g = gcd_int(g, c);
    if (g > 1) {
      // g*s + k > 0  iff  s >= ceil((1 - k) / g)
      Integer lower = -floor_div(a.t.constant - 1, g);
      for (auto& [v, c] : a.t.coef) c /= g;
      a.t.constant = 1 - lower;
    }
    return PFormula::atom(std::move(a));
  }
  a.d = abs_int(a.d);
  Linear r;
  for (const auto& [v, c] : a.t.coef) put(r, v, mod_pos(c, a.d));
  r.constant = mod_pos(a.t.constant, a.d);
  a.t = r;
  Integer g = a.d;
  for (const auto& [v, c] : a.t.coef) g = gcd_int(g, c);
  g = gcd_int(g, a.t.constant);
  if (g > 1) {
    a.d /= g;
    for (auto& [v, c] : a.t.coef) c /= g;
    a.t.constant /= g;
  }
  bool divides = a.t.is_constant() ? a.t.constant == 0 : a.d == 1;
  if (a.t.is_constant() || a.d == 1) return PFormula::truth(a.kind == Atom::Kind::Div ? divides : !divides);
  return PFormula::atom(std::move(a));
}

Atom negate_atom(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Pos: return {Atom::Kind::Pos, 0, const_form(1) - a.t};  // t <= 0
    case Atom::Kind::Div: return {Atom::Kind::NDiv, a.d, a.t};
    case Atom::Kind::NDiv: return {Atom::Kind::Div, a.d, a.t};
  }
  return a;
}

// Flattens, folds constants and drops repeated children.
PFormula junction(K kind, const std::vector<PFormula>& items) {
  const K unit = kind == K::And ? K::True : K::False;
  const K zero = kind == K::And ? K::False : K::True;
  std::vector<PFormula> out;
  std::set<Atom> atoms;
  std::function<bool(const PFormula&)> add = [&](const PFormula& f) {
    if (f.kind() == zero) return false;
    if (f.kind() == unit) return true;
    if (f.kind() == kind) {
      for (const auto& g : f.parts())
        if (!add(g)) return false;
      return true;
    }
    if (f.kind() == K::Atom) {
      if (!atoms.insert(f.atom()).second) return true;
      Atom neg = negate_atom(f.atom());
      if (f.atom().kind != Atom::Kind::Pos && atoms.count(neg)) return false;
    }
    out.push_back(f);
    return true;
  };
  for (const auto& f : items)
    if (!add(f)) return PFormula::truth(zero == K::True);
  if (out.empty()) return PFormula::truth(unit == K::True);
  if (out.size() == 1) return out[0];
  return kind == K::And ? PFormula::conj(std::move(out)) : PFormula::disj(std::move(out));
}

// Negation normal form of a quantifier-free formula, optionally negated.
PFormula nnf(const PFormula& f, bool negate) {
  switch (f.kind()) {
    case K::True:
    case K::False: return PFormula::truth((f.kind() == K::True) != negate);
    case K::Atom: return normalize_atom(negate ? negate_atom(f.atom()) : f.atom());
    case K::Not: return nnf(f.parts()[0], !negate);
    case K::And:
    case K::Or: {
      std::vector<PFormula> parts;
      for (const auto& p : f.parts()) parts.push_back(nnf(p, negate));
      K k = f.kind();
      if (negate) k = k == K::And ? K::Or : K::And;
      return junction(k, parts);
    }
    default: throw std::logic_error("nnf: quantifier");
  }
}

enum class Infinity { None, Minus, Plus };

// φ[x := s] with the bound atoms of x replaced per `inf`; atoms are
// normalized on the way.
PFormula instantiate(const PFormula& f, unsigned x, const Linear& s, Infinity inf) {
  switch (f.kind()) {
    case K::True:
    case K::False: return f;
    case K::Atom: {
      const Atom& a = f.atom();
      Integer c = a.t.at(x);
      if (c == 0) return f;
      if (a.kind == Atom::Kind::Pos && inf != Infinity::None) {
        // c = +1: lower bound on x; c = -1: upper bound.
        bool lower = c > 0;
        return PFormula::truth(inf == Infinity::Minus ? !lower : lower);
      }
      Atom b = a;
      put(b.t, x, 0);
      b.t = b.t + c * s;
      return normalize_atom(std::move(b));
    }
    case K::And:
    case K::Or: {
      std::vector<PFormula> parts;
      for (const auto& p : f.parts()) parts.push_back(instantiate(p, x, s, inf));
      return junction(f.kind(), parts);
    }
    default: throw std::logic_error("instantiate: unexpected node");
  }
}

void collect_atoms(const PFormula& f, std::vector<Atom>& out) {
  if (f.kind() == K::Atom) out.push_back(f.atom());
  for (const auto& p : f.parts()) collect_atoms(p, out);
}

// Rescales every atom mentioning x so that x occurs with coefficient ±1,
// standing for l*x.
PFormula unit_coefficients(const PFormula& f, unsigned x, const Integer& l) {
  switch (f.kind()) {
    case K::Atom: {
      Atom a = f.atom();
      Integer c = a.t.at(x);
      if (c == 0) return f;
      Integer m = l / abs_int(c);
      a.t = m * a.t;
      if (a.kind != Atom::Kind::Pos) a.d *= m;
      put(a.t, x, c > 0 ? 1 : -1);
      return PFormula::atom(std::move(a));
    }
    case K::And:
    case K::Or: {
      std::vector<PFormula> parts;
      for (const auto& p : f.parts()) parts.push_back(unit_coefficients(p, x, l));
      return f.kind() == K::And ? PFormula::conj(std::move(parts)) : PFormula::disj(std::move(parts));
    }
    default: return f;
  }
}

// ∃x over the integers of a normalized quantifier-free formula.
PFormula cooper(unsigned x, const PFormula& phi) {
  std::vector<Atom> atoms;
  collect_atoms(phi, atoms);
  Integer l = 1;
  for (const auto& a : atoms)
    if (a.t.at(x) != 0) l = lcm_int(l, a.t.at(x));
  if (std::none_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.t.at(x) != 0; })) return phi;

  PFormula psi = unit_coefficients(phi, x, l);
  if (l > 1) psi = PFormula::conj({psi, PFormula::atom(Atom{Atom::Kind::Div, l, var_form(x)})});

  atoms.clear();
  collect_atoms(psi, atoms);
  Integer delta = 1;
  std::set<Linear> lower, upper;
  for (const auto& a : atoms) {
    Integer c = a.t.at(x);
    if (c == 0) continue;
    if (a.kind != Atom::Kind::Pos) {
      delta = lcm_int(delta, a.d);
      continue;
    }
    Linear rest = a.t;
    put(rest, x, 0);
    if (c > 0)
      lower.insert(Integer(-1) * rest);  // x > -rest
    else
      upper.insert(rest);  // x < rest
  }

  std::vector<PFormula> cases;
  const bool use_lower = lower.size() <= upper.size();
  for (Integer j = 1; j <= delta; ++j) {
    Linear at = const_form(use_lower ? j : Integer(-j));
    cases.push_back(instantiate(psi, x, at, use_lower ? Infinity::Minus : Infinity::Plus));
    if (cases.back().kind() == K::True) return cases.back();
  }
  for (const auto& bound : use_lower ? lower : upper)
    for (Integer j = 1; j <= delta; ++j) {
      cases.push_back(instantiate(psi, x, bound + const_form(use_lower ? j : Integer(-j)), Infinity::None));
      if (cases.back().kind() == K::True) return cases.back();
    }
  return junction(K::Or, cases);
}

PFormula eliminate(const PFormula& f) {
  switch (f.kind()) {
    case K::Exists:
    case K::Forall: {
      const unsigned x = f.var();
      PFormula body = eliminate(f.parts()[0]);
      bool universal = f.kind() == K::Forall;
      if (universal) body = nnf(body, true);
      PFormula guarded = junction(K::And, {normalize_atom(Atom{Atom::Kind::Pos, 0, var_form(x) + const_form(1)}), body});
      PFormula r = cooper(x, guarded);
      return universal ? nnf(r, true) : r;
    }
    case K::Not: return nnf(eliminate(f.parts()[0]), true);
    case K::And:
    case K::Or: {
      std::vector<PFormula> parts;
      for (const auto& p : f.parts()) parts.push_back(eliminate(p));
      return junction(f.kind(), parts);
    }
    default: return nnf(f, false);
  }
}

bool eval_rec(const PFormula& f) {
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: {
      const Atom& a = f.atom();
      if (!a.t.is_constant()) throw std::invalid_argument("eval_closed_qfree: open atom " + atom_string(a));
      if (a.kind == Atom::Kind::Pos) return a.t.constant > 0;
      if (a.d == 0) throw std::invalid_argument("eval_closed_qfree: zero divisor");
      bool div = a.t.constant % a.d == 0;
      return a.kind == Atom::Kind::Div ? div : !div;
    }
    case K::Not: return !eval_rec(f.parts()[0]);
    case K::And:
      return std::all_of(f.parts().begin(), f.parts().end(), [](const PFormula& p) { return eval_rec(p); });
    case K::Or:
      return std::any_of(f.parts().begin(), f.parts().end(), [](const PFormula& p) { return eval_rec(p); });
    default: throw std::invalid_argument("eval_closed_qfree: quantified input");
  }
}

void free_vars(const PFormula& f, std::set<unsigned>& bound, std::set<unsigned>& out) {
  if (f.kind() == K::Atom) {
    for (const auto& [v, c] : f.atom().t.coef)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.kind() == K::Exists || f.kind() == K::Forall) {
    bool fresh = bound.insert(f.var()).second;
    free_vars(f.parts()[0], bound, out);
    if (fresh) bound.erase(f.var());
    return;
  }
  for (const auto& p : f.parts()) free_vars(p, bound, out);
}

}  // namespace

PFormula eliminate_quantifiers(const PFormula& f) { return eliminate(f); }

bool eval_closed_qfree(const PFormula& f) {
  if (!f.is_quantifier_free()) throw std::invalid_argument("eval_closed_qfree: quantified input");
  return eval_rec(f);
}

bool decide(const PFormula& f) {
  std::set<unsigned> bound, fv;
  free_vars(f, bound, fv);
  if (!fv.empty()) throw std::invalid_argument("decide: free variable x" + std::to_string(*fv.begin()));
  return eval_closed_qfree(eliminate_quantifiers(f));
}

bool decide(const Formula& f) {
  if (!syntax::is_closed(f)) throw std::invalid_argument("decide: the formula is not closed");
  return decide(from_formula(f));
}

}  // namespace metawb::presburger
