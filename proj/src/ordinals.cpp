#include "metawb/ordinals.hpp"

#include <cctype>

namespace metawb::ordinals {

namespace {
const std::vector<OrdTerm> kNoTerms;
}

Ord::Ord() = default;

Ord Ord::natural(const Natural& n) {
  if (n == 0) return {};
  return from_terms({OrdTerm{Ord(), n}});
}

Ord Ord::omega() { return omega_pow(natural(1)); }

Ord Ord::omega_pow(const Ord& e, const Natural& c) {
  if (c == 0) return {};
  return from_terms({OrdTerm{e, c}});
}

Ord Ord::from_terms(std::vector<OrdTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coef <= 0) throw std::invalid_argument("ordinal coefficient must be positive");
    if (i > 0 && compare(terms[i - 1].exponent, terms[i].exponent) != std::strong_ordering::greater)
      throw std::invalid_argument("ordinal exponents must strictly decrease");
  }
  Ord o;
  if (!terms.empty()) o.terms_ = std::make_shared<const std::vector<OrdTerm>>(std::move(terms));
  return o;
}

const std::vector<OrdTerm>& Ord::terms() const { return terms_ ? *terms_ : kNoTerms; }
bool Ord::is_zero() const { return terms().empty(); }
bool Ord::is_successor() const { return !is_zero() && terms().back().exponent.is_zero(); }
bool Ord::is_limit() const { return !is_zero() && !is_successor(); }
Natural Ord::finite_part() const { return is_successor() ? terms().back().coef : Natural(0); }

std::strong_ordering compare(const Ord& a, const Ord& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = compare(x[i].exponent, y[i].exponent); c != 0) return c;
    if (x[i].coef != y[i].coef) return x[i].coef < y[i].coef ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.size() <=> y.size();
}

Ord add(const Ord& a, const Ord& b) {
  if (b.is_zero()) return a;
  const Ord& lead = b.terms().front().exponent;
  std::vector<OrdTerm> out;
  Natural carried = 0;
  for (const auto& t : a.terms()) {
    auto c = compare(t.exponent, lead);
    if (c == std::strong_ordering::greater)
      out.push_back(t);
    else if (c == 0)
      carried = t.coef;
  }
  for (const auto& t : b.terms()) out.push_back(t);
  out[out.size() - b.terms().size()].coef += carried;
  return Ord::from_terms(std::move(out));
}

Ord predecessor(const Ord& a) {
  if (!a.is_successor()) throw std::invalid_argument("predecessor: " + to_string(a) + " is not a successor");
  std::vector<OrdTerm> t = a.terms();
  if (--t.back().coef == 0) t.pop_back();
  return Ord::from_terms(std::move(t));
}

Ord fundamental_sequence(const Ord& l, unsigned n) {
  if (!l.is_limit()) throw std::invalid_argument("fundamental_sequence: " + to_string(l) + " is not a limit");
  std::vector<OrdTerm> t = l.terms();
  Ord beta = t.back().exponent;
  if (--t.back().coef == 0) t.pop_back();
  Ord prefix = Ord::from_terms(std::move(t));
  if (beta.is_successor()) return add(prefix, Ord::omega_pow(predecessor(beta), n));
  return add(prefix, Ord::omega_pow(fundamental_sequence(beta, n)));
}

Ord two_pow(const Ord& a) {
  Ord e;
  Natural m = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent.is_zero()) {
      m = t.coef;
      continue;
    }
    // -1 + b: only a finite b loses the one; 1 + b = b once b is infinite.
    const Ord& b = t.exponent;
    bool finite = b.terms().size() == 1 && b.terms()[0].exponent.is_zero();
    e = add(e, Ord::omega_pow(finite ? predecessor(b) : b, t.coef));
  }
  if (m > 100'000'000) throw std::invalid_argument("two_pow: finite part too large");
  Natural scale = Natural(1) << static_cast<unsigned>(m);
  return e.is_zero() ? Ord::natural(scale) : Ord::omega_pow(e, scale);
}

Natural evaluate_at(const Ord& a, unsigned m) {
  Natural sum = 0;
  for (const auto& t : a.terms()) {
    Natural e = evaluate_at(t.exponent, m);
    if (e > 1'000'000) throw std::invalid_argument("evaluate_at: exponent too large");
    sum += boost::multiprecision::pow(Natural(m), static_cast<unsigned>(e)) * t.coef;
  }
  return sum;
}

std::string to_string(const Ord& a) {
  if (a.is_zero()) return "0";
  if (a == Ord::omega()) return "w";
  std::string s;
  for (const auto& t : a.terms()) {
    if (!s.empty()) s += " + ";
    if (t.exponent.is_zero())
      s += t.coef.str();
    else
      s += "w^(" + to_string(t.exponent) + ")*" + t.coef.str();
  }
  return s;
}

namespace {

class OrdReader {
 public:
  explicit OrdReader(std::string_view s) : s_(s) {}

  Ord whole() {
    Ord o = sum();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return o;
  }

 private:
  Ord sum() {
    Ord o = term();
    while (eat('+')) o = add(o, term());
    return o;
  }

  Ord term() {
    skip();
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) return Ord::natural(number());
    if (!eat('w')) fail("expected a numeral or w");
    Ord e = Ord::natural(1);
    if (eat('^')) {
      if (!eat('(')) fail("expected (");
      e = sum();
      if (!eat(')')) fail("expected )");
    }
    Natural c = 1;
    if (eat('*')) c = number();
    return Ord::omega_pow(e, c);
  }

  Natural number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a numeral");
    return Natural(std::string(s_.substr(start, i_ - start)));
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("ordinal, column " + std::to_string(i_ + 1) + ": " + what);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Ord parse_ord(std::string_view text) { return OrdReader(text).whole(); }

// ---------------------------------------------------------------------------

struct ExpPoly::Node {
  Kind kind;
  std::vector<ExpPoly> kids;
};

ExpPoly ExpPoly::zero() { return ExpPoly(std::make_shared<const Node>(Node{Kind::Zero, {}})); }
ExpPoly ExpPoly::x() { return ExpPoly(std::make_shared<const Node>(Node{Kind::X, {}})); }
ExpPoly ExpPoly::sum(ExpPoly a, ExpPoly b) {
  return ExpPoly(std::make_shared<const Node>(Node{Kind::Sum, {std::move(a), std::move(b)}}));
}
ExpPoly ExpPoly::xpow(ExpPoly e) { return ExpPoly(std::make_shared<const Node>(Node{Kind::XPow, {std::move(e)}})); }

ExpPoly::Kind ExpPoly::kind() const { return node_->kind; }
const ExpPoly& ExpPoly::left() const {
  if (node_->kids.empty()) throw std::logic_error("ExpPoly::left on a leaf");
  return node_->kids[0];
}
const ExpPoly& ExpPoly::right() const {
  if (node_->kind != Kind::Sum) throw std::logic_error("ExpPoly::right on a non-sum");
  return node_->kids[1];
}

std::string to_string(const ExpPoly& e) {
  switch (e.kind()) {
    case ExpPoly::Kind::Zero: return "0";
    case ExpPoly::Kind::X: return "X";
    case ExpPoly::Kind::Sum: return "(" + to_string(e.left()) + " + " + to_string(e.right()) + ")";
    case ExpPoly::Kind::XPow: return "X^(" + to_string(e.left()) + ")";
  }
  return "?";
}

Ord normalize(const ExpPoly& e) {
  switch (e.kind()) {
    case ExpPoly::Kind::Zero: return {};
    case ExpPoly::Kind::X: return Ord::omega();
    case ExpPoly::Kind::Sum: return add(normalize(e.left()), normalize(e.right()));
    case ExpPoly::Kind::XPow: return Ord::omega_pow(normalize(e.left()));
  }
  return {};
}

}  // namespace metawb::ordinals
