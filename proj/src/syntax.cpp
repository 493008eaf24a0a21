#include "metawb/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace metawb::syntax {

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  Kind kind;
  VarId var;
  std::vector<Term> args;
  std::size_t size;
};

Term Term::var(VarId v) { return Term(std::make_shared<const Node>(Node{Kind::Var, v, {}, 1})); }
Term Term::zero() { return Term(std::make_shared<const Node>(Node{Kind::Zero, {}, {}, 1})); }
Term Term::succ(Term t) {
  std::size_t n = t.size() + 1;
  return Term(std::make_shared<const Node>(Node{Kind::Succ, {}, {std::move(t)}, n}));
}
Term Term::plus(Term a, Term b) {
  std::size_t n = a.size() + b.size() + 1;
  return Term(std::make_shared<const Node>(Node{Kind::Plus, {}, {std::move(a), std::move(b)}, n}));
}
Term Term::times(Term a, Term b) {
  std::size_t n = a.size() + b.size() + 1;
  return Term(std::make_shared<const Node>(Node{Kind::Times, {}, {std::move(a), std::move(b)}, n}));
}
Term Term::numeral(unsigned n) {
  Term t = zero();
  for (unsigned i = 0; i < n; ++i) t = succ(t);
  return t;
}

Term::Kind Term::kind() const { return node_->kind; }
VarId Term::var_id() const { return node_->var; }
const Term& Term::lhs() const { return node_->args.at(0); }
const Term& Term::rhs() const { return node_->args.at(1); }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->size != b.node_->size) return false;
  if (a.node_->kind == Term::Kind::Var) return a.node_->var == b.node_->var;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (a.node_->kind == Term::Kind::Var) return a.node_->var <=> b.node_->var;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (auto c = a.node_->args[i] <=> b.node_->args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula::Node {
  Kind kind;
  VarId var;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  std::size_t size;
  std::size_t degree;
};

namespace {

std::shared_ptr<const Formula::Node> make_atom_node(Formula::Kind k, Term a, Term b) {
  std::size_t n = a.size() + b.size() + 1;
  return std::make_shared<const Formula::Node>(
      Formula::Node{k, {}, {std::move(a), std::move(b)}, {}, n, 0});
}

}  // namespace

Formula Formula::eq(Term a, Term b) { return Formula(make_atom_node(Kind::Eq, std::move(a), std::move(b))); }
Formula Formula::lt(Term a, Term b) { return Formula(make_atom_node(Kind::Lt, std::move(a), std::move(b))); }
Formula Formula::mem(Term a, Term b) { return Formula(make_atom_node(Kind::Mem, std::move(a), std::move(b))); }

Formula Formula::negation(Formula f) {
  std::size_t n = f.size() + 1, d = f.degree() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}, n, d}));
}

namespace {
Formula::Node binary_node(Formula::Kind k, Formula a, Formula b) {
  std::size_t n = a.size() + b.size() + 1, d = a.degree() + b.degree() + 1;
  return Formula::Node{k, {}, {}, {std::move(a), std::move(b)}, n, d};
}
}  // namespace

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(binary_node(Kind::Or, std::move(a), std::move(b))));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(binary_node(Kind::And, std::move(a), std::move(b))));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(binary_node(Kind::Implies, std::move(a), std::move(b))));
}
Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(binary_node(Kind::Iff, std::move(a), std::move(b))));
}
Formula Formula::exists(VarId v, Formula body) {
  std::size_t n = body.size() + 2, d = body.degree() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, v, {}, {std::move(body)}, n, d}));
}
Formula Formula::forall(VarId v, Formula body) {
  std::size_t n = body.size() + 2, d = body.degree() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::Forall, v, {}, {std::move(body)}, n, d}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::is_atom() const {
  return node_->kind == Kind::Eq || node_->kind == Kind::Lt || node_->kind == Kind::Mem;
}
bool Formula::is_binary() const {
  return node_->kind == Kind::Or || node_->kind == Kind::And || node_->kind == Kind::Implies ||
         node_->kind == Kind::Iff;
}
bool Formula::is_quantifier() const {
  return node_->kind == Kind::Exists || node_->kind == Kind::Forall;
}
const Term& Formula::left_term() const { return node_->terms.at(0); }
const Term& Formula::right_term() const { return node_->terms.at(1); }
const Formula& Formula::sub() const { return node_->subs.at(0); }
const Formula& Formula::right() const { return node_->subs.at(1); }
VarId Formula::bound() const { return node_->var; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::degree() const { return node_->degree; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.var != y.var) return false;
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    if (!(x.terms[i] == y.terms[i])) return false;
  for (std::size_t i = 0; i < x.subs.size(); ++i)
    if (!(x.subs[i] == y.subs[i])) return false;
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.var <=> y.var; c != 0) return c;
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    if (auto c = x.terms[i] <=> y.terms[i]; c != 0) return c;
  for (std::size_t i = 0; i < x.subs.size(); ++i)
    if (auto c = x.subs[i] <=> y.subs[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, Signature sig) : text_(text), sig_(sig) {}

  Formula formula_top() {
    Formula f = iff();
    expect_end();
    return f;
  }

  Term term_top() {
    Term t = sum();
    expect_end();
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view lit) {
    skip_ws();
    return text_.substr(pos_, lit.size()) == lit;
  }

  bool accept(std::string_view lit) {
    if (!peek(lit)) return false;
    pos_ += lit.size();
    return true;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool peek_keyword(std::string_view kw) {
    if (!peek(kw)) return false;
    std::size_t end = pos_ + kw.size();
    return end >= text_.size() || !ident_char(text_[end]);
  }

  bool accept_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) return false;
    pos_ += kw.size();
    return true;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  Formula iff() {
    Formula f = imp();
    while (accept("<->")) f = Formula::iff(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept("->")) return Formula::implies(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept("\\/")) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept("/\\")) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (accept("~")) return Formula::negation(unary());
    bool is_forall = peek_keyword("forall");
    if (is_forall || peek_keyword("exists")) {
      pos_ += 6;
      VarId v = variable();
      expect(".");
      Formula body = iff();
      return is_forall ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    if (peek("(")) {
      std::size_t start = pos_;
      try {
        return atom();
      } catch (const ParseError& as_atom) {
        pos_ = start;
        try {
          expect("(");
          Formula f = iff();
          expect(")");
          return f;
        } catch (const ParseError& as_group) {
          if (as_atom.position() > as_group.position()) throw as_atom;
          throw;
        }
      }
    }
    return atom();
  }

  Formula atom() {
    Term a = sum();
    skip_ws();
    std::size_t at = pos_;
    if (accept("=")) return Formula::eq(a, sum());
    if (peek("<") && !peek("<->")) {
      ++pos_;
      if (sig_ == Signature::set_theory) throw ParseError(at, "'<' not in signature");
      return Formula::lt(a, sum());
    }
    if (accept_keyword("in")) {
      if (sig_ != Signature::set_theory) throw ParseError(at, "membership not in signature");
      return Formula::mem(a, sum());
    }
    fail("expected '=', '<' or 'in'");
  }

  VarId variable() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'x' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      unsigned long n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (n > 1'000'000) fail("variable index too large");
        ++pos_;
      }
      if (pos_ < text_.size() && ident_char(text_[pos_])) fail("malformed variable");
      return VarId{static_cast<unsigned>(n)};
    }
    fail("expected variable xN");
  }

  Term sum() {
    Term t = product();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (!accept("+")) return t;
      if (sig_ == Signature::set_theory) throw ParseError(at, "'+' not in signature");
      t = Term::plus(t, product());
    }
  }

  Term product() {
    Term t = primary();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (!accept("*")) return t;
      if (sig_ != Signature::arithmetic) throw ParseError(at, "'*' not in signature");
      t = Term::times(t, primary());
    }
  }

  Term primary() {
    skip_ws();
    std::size_t at = pos_;
    if (accept("(")) {
      Term t = sum();
      expect(")");
      return t;
    }
    if (accept_keyword("S")) {
      if (sig_ == Signature::set_theory) throw ParseError(at, "'S' not in signature");
      expect("(");
      Term t = sum();
      expect(")");
      return Term::succ(t);
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (sig_ == Signature::set_theory) throw ParseError(at, "numerals not in signature");
      unsigned long n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (n > 100'000) throw ParseError(at, "numeral too large");
        ++pos_;
      }
      return Term::numeral(static_cast<unsigned>(n));
    }
    return Term::var(variable());
  }

  std::string_view text_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, Signature sig) { return Parser(text, sig).formula_top(); }
Term parse_term(std::string_view text, Signature sig) { return Parser(text, sig).term_top(); }

namespace {

bool term_fits(const Term& t, Signature sig) {
  switch (t.kind()) {
    case Term::Kind::Var: return true;
    case Term::Kind::Zero: return sig != Signature::set_theory;
    case Term::Kind::Succ: return sig != Signature::set_theory && term_fits(t.lhs(), sig);
    case Term::Kind::Plus:
      return sig != Signature::set_theory && term_fits(t.lhs(), sig) && term_fits(t.rhs(), sig);
    case Term::Kind::Times:
      return sig == Signature::arithmetic && term_fits(t.lhs(), sig) && term_fits(t.rhs(), sig);
  }
  return false;
}

}  // namespace

bool fits_signature(const Formula& f, Signature sig) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return term_fits(f.left_term(), sig) && term_fits(f.right_term(), sig);
    case Formula::Kind::Lt:
      return sig != Signature::set_theory && term_fits(f.left_term(), sig) &&
             term_fits(f.right_term(), sig);
    case Formula::Kind::Mem:
      return sig == Signature::set_theory && term_fits(f.left_term(), sig) &&
             term_fits(f.right_term(), sig);
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return fits_signature(f.sub(), sig);
    default: return fits_signature(f.sub(), sig) && fits_signature(f.right(), sig);
  }
}

void check_signature(const Formula& f, Signature sig) {
  if (!fits_signature(f, sig)) throw ParseError(0, "formula uses symbols outside the signature");
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_term(const Term& t, int ctx, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += "x" + std::to_string(t.var_id().index); return;
    case Term::Kind::Zero: out += "0"; return;
    case Term::Kind::Succ:
      out += "S(";
      print_term(t.lhs(), 0, out);
      out += ")";
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times: {
      int prec = t.kind() == Term::Kind::Plus ? 1 : 2;
      bool paren = prec < ctx;
      if (paren) out += "(";
      print_term(t.lhs(), prec, out);
      out += prec == 1 ? " + " : " * ";
      print_term(t.rhs(), prec + 1, out);
      if (paren) out += ")";
      return;
    }
  }
}

// Contexts: 0 top/quantifier body, 1 iff, 2 imp, 3 or, 4 and, 5 unary.
void print_formula(const Formula& f, int ctx, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Lt:
    case K::Mem:
      print_term(f.left_term(), 0, out);
      out += f.kind() == K::Eq ? " = " : f.kind() == K::Lt ? " < " : " in ";
      print_term(f.right_term(), 0, out);
      return;
    case K::Not:
      out += "~";
      if (f.sub().kind() == K::Not) {
        print_formula(f.sub(), 5, out);
      } else {
        out += "(";
        print_formula(f.sub(), 0, out);
        out += ")";
      }
      return;
    case K::Exists:
    case K::Forall: {
      bool paren = ctx > 0;
      if (paren) out += "(";
      out += f.kind() == K::Forall ? "forall x" : "exists x";
      out += std::to_string(f.bound().index) + ". ";
      print_formula(f.sub(), 0, out);
      if (paren) out += ")";
      return;
    }
    default: break;
  }
  int prec = 0, lctx = 0, rctx = 0;
  const char* op = "";
  switch (f.kind()) {
    case K::Iff: prec = 1; lctx = 1; rctx = 2; op = " <-> "; break;
    case K::Implies: prec = 2; lctx = 3; rctx = 2; op = " -> "; break;
    case K::Or: prec = 3; lctx = 3; rctx = 4; op = " \\/ "; break;
    case K::And: prec = 4; lctx = 4; rctx = 5; op = " /\\ "; break;
    default: break;
  }
  bool paren = prec < ctx;
  if (paren) out += "(";
  print_formula(f.sub(), lctx, out);
  out += op;
  print_formula(f.right(), rctx, out);
  if (paren) out += ")";
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, 0, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Polish notation

std::string to_string(const Symbol& s) {
  using K = Symbol::Kind;
  switch (s.kind) {
    case K::Zero: return "0";
    case K::Succ: return "S";
    case K::Plus: return "+";
    case K::Times: return "*";
    case K::Eq: return "=";
    case K::Lt: return "<";
    case K::Not: return "~";
    case K::Or: return "\\/";
    case K::And: return "/\\";
    case K::Implies: return "->";
    case K::Exists: return "exists";
    case K::Forall: return "forall";
    case K::Var: return "x" + std::to_string(s.var);
  }
  return "?";
}

std::string to_string(const std::vector<Symbol>& symbols) {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += ' ';
    out += to_string(s);
  }
  return out;
}

namespace {

void polish_term(const Term& t, std::vector<Symbol>& out) {
  using K = Symbol::Kind;
  switch (t.kind()) {
    case Term::Kind::Var: out.push_back({K::Var, t.var_id().index}); return;
    case Term::Kind::Zero: out.push_back({K::Zero}); return;
    case Term::Kind::Succ:
      out.push_back({K::Succ});
      polish_term(t.lhs(), out);
      return;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      out.push_back({t.kind() == Term::Kind::Plus ? K::Plus : K::Times});
      polish_term(t.lhs(), out);
      polish_term(t.rhs(), out);
      return;
  }
}

void polish_formula(const Formula& f, std::vector<Symbol>& out) {
  using FK = Formula::Kind;
  using K = Symbol::Kind;
  switch (f.kind()) {
    case FK::Eq:
    case FK::Lt:
      out.push_back({f.kind() == FK::Eq ? K::Eq : K::Lt});
      polish_term(f.left_term(), out);
      polish_term(f.right_term(), out);
      return;
    case FK::Mem: throw std::invalid_argument("membership has no Gödel symbol");
    case FK::Iff: throw std::invalid_argument("'<->' has no Gödel symbol; expand it first");
    case FK::Not:
      out.push_back({K::Not});
      polish_formula(f.sub(), out);
      return;
    case FK::Or:
    case FK::And:
    case FK::Implies:
      out.push_back({f.kind() == FK::Or ? K::Or : f.kind() == FK::And ? K::And : K::Implies});
      polish_formula(f.sub(), out);
      polish_formula(f.right(), out);
      return;
    case FK::Exists:
    case FK::Forall:
      out.push_back({f.kind() == FK::Exists ? K::Exists : K::Forall});
      out.push_back({K::Var, f.bound().index});
      polish_formula(f.sub(), out);
      return;
  }
}

class PolishReader {
 public:
  explicit PolishReader(const std::vector<Symbol>& s) : s_(s) {}

  Formula formula() {
    using K = Symbol::Kind;
    const Symbol& sym = next();
    switch (sym.kind) {
      case K::Eq: {
        Term a = term();
        return Formula::eq(a, term());
      }
      case K::Lt: {
        Term a = term();
        return Formula::lt(a, term());
      }
      case K::Not: return Formula::negation(formula());
      case K::Or: {
        Formula a = formula();
        return Formula::disj(a, formula());
      }
      case K::And: {
        Formula a = formula();
        return Formula::conj(a, formula());
      }
      case K::Implies: {
        Formula a = formula();
        return Formula::implies(a, formula());
      }
      case K::Exists:
      case K::Forall: {
        const Symbol& v = next();
        if (v.kind != K::Var) fail("quantifier must be followed by a variable");
        Formula body = formula();
        return sym.kind == K::Exists ? Formula::exists(VarId{v.var}, body)
                                     : Formula::forall(VarId{v.var}, body);
      }
      default: fail("expected a formula symbol, got '" + to_string(sym) + "'");
    }
  }

  Term term() {
    using K = Symbol::Kind;
    const Symbol& sym = next();
    switch (sym.kind) {
      case K::Zero: return Term::zero();
      case K::Var: return Term::var(sym.var);
      case K::Succ: return Term::succ(term());
      case K::Plus:
      case K::Times: {
        Term a = term();
        Term b = term();
        return sym.kind == K::Plus ? Term::plus(a, b) : Term::times(a, b);
      }
      default: fail("expected a term symbol, got '" + to_string(sym) + "'");
    }
  }

  bool at_end() const { return pos_ == s_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  const Symbol& next() {
    if (pos_ >= s_.size()) fail("unexpected end of symbol sequence");
    return s_[pos_++];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("ill-formed Polish sequence at symbol " + std::to_string(pos_) +
                                ": " + msg);
  }

  const std::vector<Symbol>& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Symbol> print_polish(const Formula& f) {
  if (!is_core(f)) throw std::invalid_argument("non-core connective present; normalize first");
  return to_polish(f);
}

std::vector<Symbol> to_polish(const Formula& f) {
  std::vector<Symbol> out;
  polish_formula(f, out);
  return out;
}

Formula parse_polish(const std::vector<Symbol>& symbols) {
  PolishReader r(symbols);
  Formula f = r.formula();
  if (!r.at_end())
    throw std::invalid_argument("ill-formed Polish sequence: trailing symbols after position " +
                                std::to_string(r.pos()));
  return f;
}

// ---------------------------------------------------------------------------
// Normalization

Formula normalize_core(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Lt:
    case K::Mem: return f;
    case K::Not: return Formula::negation(normalize_core(f.sub()));
    case K::Or: return Formula::disj(normalize_core(f.sub()), normalize_core(f.right()));
    case K::Implies:
      return Formula::disj(Formula::negation(normalize_core(f.sub())), normalize_core(f.right()));
    case K::And:
      return Formula::negation(Formula::disj(Formula::negation(normalize_core(f.sub())),
                                             Formula::negation(normalize_core(f.right()))));
    case K::Iff: {
      Formula a = f.sub(), b = f.right();
      return normalize_core(Formula::conj(Formula::implies(a, b), Formula::implies(b, a)));
    }
    case K::Exists: return Formula::exists(f.bound(), normalize_core(f.sub()));
    case K::Forall:
      return Formula::negation(
          Formula::exists(f.bound(), Formula::negation(normalize_core(f.sub()))));
  }
  return f;
}

Formula expand_iff(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Lt:
    case K::Mem: return f;
    case K::Not: return Formula::negation(expand_iff(f.sub()));
    case K::Or: return Formula::disj(expand_iff(f.sub()), expand_iff(f.right()));
    case K::And: return Formula::conj(expand_iff(f.sub()), expand_iff(f.right()));
    case K::Implies: return Formula::implies(expand_iff(f.sub()), expand_iff(f.right()));
    case K::Iff: {
      Formula a = expand_iff(f.sub()), b = expand_iff(f.right());
      return Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
    }
    case K::Exists: return Formula::exists(f.bound(), expand_iff(f.sub()));
    case K::Forall: return Formula::forall(f.bound(), expand_iff(f.sub()));
  }
  return f;
}

bool is_core(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq:
    case K::Lt:
    case K::Mem: return true;
    case K::Not:
    case K::Exists: return is_core(f.sub());
    case K::Or: return is_core(f.sub()) && is_core(f.right());
    default: return false;
  }
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_atom()) return true;
  if (f.is_quantifier()) return false;
  if (f.kind() == Formula::Kind::Not) return is_quantifier_free(f.sub());
  return is_quantifier_free(f.sub()) && is_quantifier_free(f.right());
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace {

void collect_free(const Term& t, std::set<VarId>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.var_id()); return;
    case Term::Kind::Zero: return;
    case Term::Kind::Succ: collect_free(t.lhs(), out); return;
    default:
      collect_free(t.lhs(), out);
      collect_free(t.rhs(), out);
  }
}

bool term_mentions(const Term& t, VarId v) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.var_id() == v;
    case Term::Kind::Zero: return false;
    case Term::Kind::Succ: return term_mentions(t.lhs(), v);
    default: return term_mentions(t.lhs(), v) || term_mentions(t.rhs(), v);
  }
}

}  // namespace

std::set<VarId> free_vars(const Term& t) {
  std::set<VarId> out;
  collect_free(t, out);
  return out;
}

std::set<VarId> free_vars(const Formula& f) {
  if (f.is_atom()) {
    std::set<VarId> out;
    collect_free(f.left_term(), out);
    collect_free(f.right_term(), out);
    return out;
  }
  if (f.is_quantifier()) {
    auto out = free_vars(f.sub());
    out.erase(f.bound());
    return out;
  }
  auto out = free_vars(f.sub());
  if (f.is_binary()) out.merge(free_vars(f.right()));
  return out;
}

bool occurs_free(VarId v, const Formula& f) {
  if (f.is_atom()) return term_mentions(f.left_term(), v) || term_mentions(f.right_term(), v);
  if (f.is_quantifier()) return f.bound() != v && occurs_free(v, f.sub());
  if (f.kind() == Formula::Kind::Not) return occurs_free(v, f.sub());
  return occurs_free(v, f.sub()) || occurs_free(v, f.right());
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

long max_var_index(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return static_cast<long>(t.var_id().index);
    case Term::Kind::Zero: return -1;
    case Term::Kind::Succ: return max_var_index(t.lhs());
    default: return std::max(max_var_index(t.lhs()), max_var_index(t.rhs()));
  }
}

long max_var_index(const Formula& f) {
  if (f.is_atom()) return std::max(max_var_index(f.left_term()), max_var_index(f.right_term()));
  if (f.is_quantifier())
    return std::max(static_cast<long>(f.bound().index), max_var_index(f.sub()));
  if (f.kind() == Formula::Kind::Not) return max_var_index(f.sub());
  return std::max(max_var_index(f.sub()), max_var_index(f.right()));
}

Term substitute(const Term& t, VarId v, const Term& by) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.var_id() == v ? by : t;
    case Term::Kind::Zero: return t;
    case Term::Kind::Succ: {
      if (!term_mentions(t, v)) return t;
      return Term::succ(substitute(t.lhs(), v, by));
    }
    case Term::Kind::Plus:
      if (!term_mentions(t, v)) return t;
      return Term::plus(substitute(t.lhs(), v, by), substitute(t.rhs(), v, by));
    case Term::Kind::Times:
      if (!term_mentions(t, v)) return t;
      return Term::times(substitute(t.lhs(), v, by), substitute(t.rhs(), v, by));
  }
  return t;
}

Formula substitute(const Formula& f, VarId v, const Term& by) {
  using K = Formula::Kind;
  if (!occurs_free(v, f)) return f;
  switch (f.kind()) {
    case K::Eq: return Formula::eq(substitute(f.left_term(), v, by), substitute(f.right_term(), v, by));
    case K::Lt: return Formula::lt(substitute(f.left_term(), v, by), substitute(f.right_term(), v, by));
    case K::Mem:
      return Formula::mem(substitute(f.left_term(), v, by), substitute(f.right_term(), v, by));
    case K::Not: return Formula::negation(substitute(f.sub(), v, by));
    case K::Or: return Formula::disj(substitute(f.sub(), v, by), substitute(f.right(), v, by));
    case K::And: return Formula::conj(substitute(f.sub(), v, by), substitute(f.right(), v, by));
    case K::Implies:
      return Formula::implies(substitute(f.sub(), v, by), substitute(f.right(), v, by));
    case K::Iff: return Formula::iff(substitute(f.sub(), v, by), substitute(f.right(), v, by));
    case K::Exists:
    case K::Forall: {
      VarId y = f.bound();
      Formula body = f.sub();
      if (term_mentions(by, y)) {
        std::set<VarId> avoid = free_vars(body);
        avoid.merge(free_vars(by));
        avoid.insert(v);
        VarId z{0};
        while (avoid.count(z)) ++z.index;
        body = substitute(body, y, Term::var(z));
        y = z;
      }
      body = substitute(body, v, by);
      return f.kind() == K::Exists ? Formula::exists(y, body) : Formula::forall(y, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Alpha equivalence and matching

namespace {

using BoundEnv = std::vector<std::pair<VarId, VarId>>;

// Innermost binder position of v on the given side, or -1.
long bound_position(const BoundEnv& env, VarId v, bool left) {
  for (long i = static_cast<long>(env.size()) - 1; i >= 0; --i) {
    const auto& p = env[static_cast<std::size_t>(i)];
    if ((left ? p.first : p.second) == v) return i;
  }
  return -1;
}

bool term_captured(const Term& t, const BoundEnv& env) {
  switch (t.kind()) {
    case Term::Kind::Var: return bound_position(env, t.var_id(), false) >= 0;
    case Term::Kind::Zero: return false;
    case Term::Kind::Succ: return term_captured(t.lhs(), env);
    default: return term_captured(t.lhs(), env) || term_captured(t.rhs(), env);
  }
}

struct Matcher {
  const std::set<VarId>* pattern_vars;
  std::map<VarId, Term>* bindings;
  BoundEnv env;

  bool term(const Term& p, const Term& t) {
    if (p.kind() == Term::Kind::Var) {
      long ip = bound_position(env, p.var_id(), true);
      if (ip >= 0) {
        return t.kind() == Term::Kind::Var && bound_position(env, t.var_id(), false) == ip;
      }
      if (pattern_vars && pattern_vars->count(p.var_id())) {
        if (term_captured(t, env)) return false;
        auto it = bindings->find(p.var_id());
        if (it != bindings->end()) return it->second == t;
        bindings->emplace(p.var_id(), t);
        return true;
      }
      return t.kind() == Term::Kind::Var && t.var_id() == p.var_id() &&
             bound_position(env, t.var_id(), false) < 0;
    }
    if (p.kind() != t.kind()) return false;
    switch (p.kind()) {
      case Term::Kind::Zero: return true;
      case Term::Kind::Succ: return term(p.lhs(), t.lhs());
      default: return term(p.lhs(), t.lhs()) && term(p.rhs(), t.rhs());
    }
  }

  bool formula(const Formula& p, const Formula& t) {
    if (p.kind() != t.kind()) return false;
    if (p.is_atom()) return term(p.left_term(), t.left_term()) && term(p.right_term(), t.right_term());
    if (p.is_quantifier()) {
      env.emplace_back(p.bound(), t.bound());
      bool ok = formula(p.sub(), t.sub());
      env.pop_back();
      return ok;
    }
    if (p.kind() == Formula::Kind::Not) return formula(p.sub(), t.sub());
    return formula(p.sub(), t.sub()) && formula(p.right(), t.right());
  }
};

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  std::map<VarId, Term> none;
  Matcher m{nullptr, &none, {}};
  return m.formula(a, b);
}

bool match_formula(const Formula& pattern, const Formula& target,
                   const std::set<VarId>& pattern_vars, std::map<VarId, Term>& bindings) {
  std::map<VarId, Term> trial = bindings;
  Matcher m{&pattern_vars, &trial, {}};
  if (!m.formula(pattern, target)) return false;
  bindings = std::move(trial);
  return true;
}

bool match_term(const Term& pattern, const Term& target, const std::set<VarId>& pattern_vars,
                std::map<VarId, Term>& bindings) {
  std::map<VarId, Term> trial = bindings;
  Matcher m{&pattern_vars, &trial, {}};
  if (!m.term(pattern, target)) return false;
  bindings = std::move(trial);
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetical classification

std::string to_string(ArithClass c) {
  switch (c) {
    case ArithClass::elementary_Pi01: return "elementary_Pi01";
    case ArithClass::co_elementary_Sigma01: return "co_elementary_Sigma01";
    case ArithClass::quantifier_free: return "quantifier_free";
    case ArithClass::other: return "other";
  }
  return "other";
}

// The quantifier block is read through negations, so ~exists x B counts as
// universal whatever B is, and the core spelling ~exists x ~B of forall x B
// classifies like the original.
ArithClass classify_arith(const Formula& f) {
  if (!is_closed(f)) throw std::invalid_argument("classify_arith: formula is not closed");
  if (is_quantifier_free(f)) return ArithClass::quantifier_free;
  const Formula* g = &f;
  bool negated = false;
  int block = 0;  // 1 universal, -1 existential
  for (;;) {
    if (g->kind() == Formula::Kind::Not) {
      negated = !negated;
      g = &g->sub();
    } else if (g->is_quantifier()) {
      int k = (g->kind() == Formula::Kind::Forall) != negated ? 1 : -1;
      if (block != 0 && k != block) return ArithClass::other;
      block = k;
      g = &g->sub();
    } else {
      break;
    }
  }
  if (!is_quantifier_free(*g)) return ArithClass::other;
  return block == 1 ? ArithClass::elementary_Pi01 : ArithClass::co_elementary_Sigma01;
}

}  // namespace metawb::syntax
