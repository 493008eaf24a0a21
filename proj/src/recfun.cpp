#include "metawb/recfun.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace metawb::recfun {

struct RecExpr::Node {
  Kind kind;
  std::size_t arity;
  std::size_t index = 0;
  std::vector<RecExpr> head;  // Comp head or Mu body
  std::vector<RecExpr> args;  // Comp argument functions
};

RecExpr RecExpr::proj(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::invalid_argument("projection index out of range");
  return RecExpr(std::make_shared<const Node>(Node{Kind::Proj, n, i, {}, {}}));
}
RecExpr RecExpr::plus() { return RecExpr(std::make_shared<const Node>(Node{Kind::Plus, 2, 0, {}, {}})); }
RecExpr RecExpr::times() { return RecExpr(std::make_shared<const Node>(Node{Kind::Times, 2, 0, {}, {}})); }
RecExpr RecExpr::less() { return RecExpr(std::make_shared<const Node>(Node{Kind::Less, 2, 0, {}, {}})); }

RecExpr RecExpr::comp(RecExpr g, std::vector<RecExpr> hs) {
  if (g.arity() != hs.size())
    throw std::invalid_argument("composition: head of arity " + std::to_string(g.arity()) + " given " +
                                std::to_string(hs.size()) + " argument function(s)");
  if (hs.empty()) throw std::invalid_argument("composition needs at least one argument function");
  for (const auto& h : hs)
    if (h.arity() != hs[0].arity()) throw std::invalid_argument("composition: argument functions differ in arity");
  std::size_t n = hs[0].arity();
  return RecExpr(std::make_shared<const Node>(Node{Kind::Comp, n, 0, {std::move(g)}, std::move(hs)}));
}

RecExpr RecExpr::mu(RecExpr g) {
  if (g.arity() < 1) throw std::invalid_argument("mu needs a function of arity at least 1");
  std::size_t n = g.arity() - 1;
  return RecExpr(std::make_shared<const Node>(Node{Kind::Mu, n, 0, {std::move(g)}, {}}));
}

RecExpr::Kind RecExpr::kind() const { return node_->kind; }
std::size_t RecExpr::arity() const { return node_->arity; }
std::size_t RecExpr::proj_index() const { return node_->index; }
const RecExpr& RecExpr::g() const { return node_->head.front(); }
const std::vector<RecExpr>& RecExpr::hs() const { return node_->args; }

std::string to_string(const RecExpr& e) {
  switch (e.kind()) {
    case RecExpr::Kind::Proj: return "(proj " + std::to_string(e.arity()) + " " + std::to_string(e.proj_index()) + ")";
    case RecExpr::Kind::Plus: return "plus";
    case RecExpr::Kind::Times: return "times";
    case RecExpr::Kind::Less: return "less";
    case RecExpr::Kind::Comp: {
      std::string s = "(comp " + to_string(e.g());
      for (const auto& h : e.hs()) s += " " + to_string(h);
      return s + ")";
    }
    case RecExpr::Kind::Mu: return "(mu " + to_string(e.g()) + ")";
  }
  return "?";
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RecExpr top() {
    RecExpr e = expr();
    skip();
    if (i_ < s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) { throw ParseError(i_, m); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string word() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected a word");
    return std::string(s_.substr(st, i_ - st));
  }
  std::size_t number() {
    std::size_t st = (skip(), i_);
    std::string w = word();
    if (w.size() > 4 || w.find_first_not_of("0123456789") != std::string::npos) {
      i_ = st;
      fail("expected a small number");
    }
    return std::stoul(w);
  }
  RecExpr expr() {
    skip();
    std::size_t st = i_;
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      std::string head = word();
      RecExpr out = RecExpr::plus();
      try {
        if (head == "proj") {
          std::size_t n = number();
          std::size_t k = number();
          out = RecExpr::proj(n, k);
        } else if (head == "comp") {
          RecExpr g = expr();
          std::vector<RecExpr> hs;
          while ((skip(), i_ < s_.size() && s_[i_] != ')')) hs.push_back(expr());
          out = RecExpr::comp(g, hs);
        } else if (head == "mu") {
          out = RecExpr::mu(expr());
        } else {
          i_ = st + 1;
          fail("unknown form '" + head + "'");
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError(st, e.what());
      }
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return out;
    }
    std::string w = word();
    if (w == "plus") return RecExpr::plus();
    if (w == "times") return RecExpr::times();
    if (w == "less") return RecExpr::less();
    i_ = st;
    fail("unknown function '" + w + "'");
  }
};

struct Evaluator {
  Fuel fuel;
  Fuel used = 0;

  bool spend() {
    if (used == fuel) return false;
    ++used;
    return true;
  }

  std::optional<Natural> run(const RecExpr& e, const std::vector<Natural>& a) {
    switch (e.kind()) {
      case RecExpr::Kind::Proj:
        if (!spend()) return std::nullopt;
        return a[e.proj_index() - 1];
      case RecExpr::Kind::Plus:
        if (!spend()) return std::nullopt;
        return a[0] + a[1];
      case RecExpr::Kind::Times:
        if (!spend()) return std::nullopt;
        return a[0] * a[1];
      case RecExpr::Kind::Less:
        if (!spend()) return std::nullopt;
        return Natural(a[0] < a[1] ? 1 : 0);
      case RecExpr::Kind::Comp: {
        std::vector<Natural> inner;
        for (const auto& h : e.hs()) {
          auto v = run(h, a);
          if (!v) return std::nullopt;
          inner.push_back(*v);
        }
        return run(e.g(), inner);
      }
      case RecExpr::Kind::Mu: {
        std::vector<Natural> b;
        b.push_back(0);
        b.insert(b.end(), a.begin(), a.end());
        for (;; ++b[0]) {
          if (!spend()) return std::nullopt;
          auto v = run(e.g(), b);
          if (!v) return std::nullopt;
          if (*v == 0) return b[0];
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

RecExpr parse_expr(std::string_view text) { return ExprParser(text).top(); }

EvalResult eval(const RecExpr& e, const std::vector<Natural>& args, Fuel fuel) {
  if (args.size() != e.arity())
    throw std::invalid_argument("arity mismatch: expression takes " + std::to_string(e.arity()) + " argument(s), got " +
                                std::to_string(args.size()));
  Evaluator ev{fuel};
  auto v = ev.run(e, args);
  return {v, ev.used};
}

std::set<Natural> enumerate_range(const RecExpr& f, std::uint64_t input_budget, Fuel fuel) {
  if (f.arity() != 1) throw std::invalid_argument("enumerate_range needs a unary function");
  std::set<Natural> out;
  for (std::uint64_t m = 0; m <= input_budget; ++m)
    if (auto r = eval(f, {Natural(m)}, fuel); r.value) out.insert(*r.value);
  return out;
}

std::optional<std::uint64_t> semidecide_membership(const RecExpr& f, const Natural& n, std::uint64_t budget,
                                                   Fuel fuel) {
  if (f.arity() != 1) throw std::invalid_argument("semidecide_membership needs a unary function");
  for (std::uint64_t m = 0; m <= budget; ++m)
    if (auto r = eval(f, {Natural(m)}, fuel); r.value && *r.value == n) return m;
  return std::nullopt;
}

std::vector<RecExpr> diagonal_family() {
  const char* src[] = {
      "(proj 1 1)",                                                   // x
      "(comp plus (proj 1 1) (proj 1 1))",                            // 2x
      "(comp times (proj 1 1) (proj 1 1))",                           // x^2
      "(comp less (proj 1 1) (proj 1 1))",                            // 0
      "(comp plus (proj 1 1) (comp times (proj 1 1) (proj 1 1)))",    // x + x^2
      "(mu (comp less (comp plus (proj 2 1) (proj 2 1)) (proj 2 2)))",  // ceil(x/2)
      "(mu (comp less (comp times (proj 2 1) (proj 2 1)) (proj 2 2)))", // ceil(sqrt x)
      "(comp less (proj 1 1) (comp times (proj 1 1) (proj 1 1)))",    // 1 when x >= 2
  };
  std::vector<RecExpr> out;
  for (const char* s : src) out.push_back(parse_expr(s));
  return out;
}

bool diagonal_check(const std::vector<RecExpr>& family, Fuel fuel) {
  const std::size_t n = family.size();
  std::vector<Natural> diag(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto r = eval(family[m], {Natural(m)}, fuel);
    if (!r.value) return false;
    diag[m] = *r.value + 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    auto r = eval(family[m], {Natural(m)}, fuel);
    if (!r.value || *r.value == diag[m]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial Polynomial::constant(const Integer& c) {
  Polynomial p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_[{{name, 1}}] = 1;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) {
    Integer& slot = r.terms_[m];
    slot += c;
    if (slot == 0) r.terms_.erase(m);
  }
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * constant(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2) m[v] += e;
      Integer& slot = r.terms_[m];
      slot += c1 * c2;
      if (slot == 0) r.terms_.erase(m);
    }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::vector<std::string> Polynomial::variables() const {
  std::set<std::string> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vs.insert(v);
  return {vs.begin(), vs.end()};
}

Integer Polynomial::evaluate(const std::map<std::string, Integer>& at) const {
  Integer sum = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (const auto& [v, e] : m) {
      auto it = at.find(v);
      if (it == at.end()) throw std::invalid_argument("no value for variable " + v);
      t *= boost::multiprecision::pow(it->second, e);
    }
    sum += t;
  }
  return sum;
}

std::string to_string(const Polynomial& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  // Higher total degree first.
  std::vector<std::pair<Polynomial::Monomial, Integer>> ts(p.terms().begin(), p.terms().end());
  auto degree = [](const Polynomial::Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  };
  std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& [m, c] = ts[i];
    Integer mag = c < 0 ? Integer(-c) : c;
    if (i == 0)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    std::string factors;
    for (const auto& [v, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += v + (e > 1 ? "^" + std::to_string(e) : "");
    }
    if (factors.empty())
      out += mag.str();
    else if (mag == 1)
      out += factors;
    else
      out += mag.str() + "*" + factors;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Polynomial top() {
    Polynomial p = sum();
    if (peek() == '=') {
      ++i_;
      p = p - sum();
    }
    if (peek() != '\0') fail("unexpected trailing input");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& m) { throw ParseError(i_, m); }
  char peek() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  Polynomial sum() {
    Polynomial p = product();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++i_;
      Polynomial q = product();
      p = c == '+' ? p + q : p - q;
    }
    return p;
  }
  Polynomial product() {
    Polynomial p = unary();
    while (peek() == '*') {
      ++i_;
      p = p * unary();
    }
    return p;
  }
  Polynomial unary() {
    if (peek() == '-') {
      ++i_;
      return Polynomial::constant(0) - unary();
    }
    Polynomial base = atom();
    if (peek() == '^') {
      ++i_;
      peek();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_ || i_ - st > 3) {
        i_ = st;
        fail("expected a small exponent");
      }
      return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(st, i_ - st)))));
    }
    return base;
  }
  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++i_;
      Polynomial p = sum();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return p;
    }
    std::size_t st = i_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Polynomial::constant(Integer(std::string(s_.substr(st, i_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return Polynomial::variable(std::string(s_.substr(st, i_ - st)));
    }
    fail("expected a number, variable or '('");
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolyParser(text).top(); }

std::optional<std::vector<Integer>> diophantine_search(const Polynomial& p, std::uint64_t bound) {
  const std::vector<std::string> vs = p.variables();
  if (vs.empty()) throw std::invalid_argument("polynomial has no variables");
  const std::size_t k = vs.size();
  std::map<std::string, Integer> at;
  for (std::uint64_t m = 0; m <= bound; ++m) {
    // Coordinate values in scan order up to magnitude m.
    std::vector<Integer> order{0};
    for (std::uint64_t v = 1; v <= m; ++v) {
      order.push_back(Integer(v));
      order.push_back(-Integer(v));
    }
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      bool on_shell = false;
      for (std::size_t i = 0; i < k; ++i) on_shell |= idx[i] + 1 >= order.size() - 1 && m > 0;
      if (m == 0) on_shell = true;
      if (on_shell) {
        for (std::size_t i = 0; i < k; ++i) at[vs[i]] = order[idx[i]];
        if (p.evaluate(at) == 0) {
          std::vector<Integer> out;
          for (std::size_t i = 0; i < k; ++i) out.push_back(order[idx[i]]);
          return out;
        }
      }
      // Lexicographic increment, last coordinate fastest.
      std::size_t i = k;
      while (i > 0 && ++idx[i - 1] == order.size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Thue systems

namespace {

void check_word(const std::string& w, const char* what) {
  if (w.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  if (w.find_first_not_of("ab") != std::string::npos)
    throw std::invalid_argument(std::string(what) + " '" + w + "' is not a word over {a, b}");
}

}  // namespace

ThueSystem parse_thue(std::string_view text) {
  ThueSystem s;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::string line(text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset));
    std::size_t base = offset;
    offset = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    std::string a, eq, b, extra;
    if (!(in >> a)) continue;
    if (!(in >> eq >> b) || eq != "==" || (in >> extra)) throw ParseError(base, "expected 'A == B'");
    try {
      check_word(a, "left word");
      check_word(b, "right word");
    } catch (const std::invalid_argument& e) {
      throw ParseError(base, e.what());
    }
    s.axioms.emplace_back(a, b);
  }
  return s;
}

std::optional<std::vector<ThueStep>> thue_semidecide(const ThueSystem& s, const std::string& e,
                                                     const std::string& f, std::uint64_t step_budget) {
  check_word(e, "start word");
  check_word(f, "target word");
  if (e == f) return std::vector<ThueStep>{};
  std::unordered_map<std::string, std::pair<std::string, ThueStep>> parent;
  parent.emplace(e, std::pair<std::string, ThueStep>{});
  std::deque<std::string> queue{e};
  auto trace_to = [&](const std::string& w) {
    std::vector<ThueStep> out;
    for (std::string cur = w; cur != e; cur = parent.at(cur).first) out.push_back(parent.at(cur).second);
    std::reverse(out.begin(), out.end());
    return out;
  };
  for (std::uint64_t expanded = 0; expanded < step_budget && !queue.empty(); ++expanded) {
    std::string w = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < s.axioms.size(); ++i)
      for (bool forward : {true, false}) {
        const std::string& from = forward ? s.axioms[i].first : s.axioms[i].second;
        const std::string& to = forward ? s.axioms[i].second : s.axioms[i].first;
        for (std::size_t p = w.find(from); p != std::string::npos; p = w.find(from, p + 1)) {
          std::string next = w.substr(0, p) + to + w.substr(p + from.size());
          if (parent.count(next)) continue;
          parent.emplace(next, std::make_pair(w, ThueStep{i, forward, p, next}));
          if (next == f) return trace_to(next);
          queue.push_back(next);
        }
      }
  }
  return std::nullopt;
}

bool replay_thue(const ThueSystem& s, const std::string& e, const std::string& f,
                 const std::vector<ThueStep>& trace) {
  std::string w = e;
  for (const auto& st : trace) {
    if (st.axiom >= s.axioms.size()) return false;
    const std::string& from = st.forward ? s.axioms[st.axiom].first : s.axioms[st.axiom].second;
    const std::string& to = st.forward ? s.axioms[st.axiom].second : s.axioms[st.axiom].first;
    if (w.compare(st.position, from.size(), from) != 0 || st.position + from.size() > w.size()) return false;
    w = w.substr(0, st.position) + to + w.substr(st.position + from.size());
    if (w != st.result) return false;
  }
  return w == f;
}

// ---------------------------------------------------------------------------
// Digits of √2

int Sqrt2Digits::operator()(std::size_t index) {
  while (digits_.size() <= index) {
    Natural c = rem_ * 100;
    Natural twenty_p = root_ * 20;
    int d = 9;
    while ((twenty_p + d) * d > c) --d;
    rem_ = c - (twenty_p + d) * d;
    root_ = root_ * 10 + d;
    digits_.push_back(d);
  }
  return digits_[index];
}

std::optional<std::uint64_t> digit_run_search(const std::function<int(std::size_t)>& digits, int digit,
                                              std::uint64_t run_length, std::uint64_t budget) {
  if (run_length == 0) throw std::invalid_argument("run length must be positive");
  std::uint64_t run = 0;
  for (std::uint64_t i = 0; i < budget; ++i) {
    run = digits(i) == digit ? run + 1 : 0;
    if (run == run_length) return i + 1 - run_length;
  }
  return std::nullopt;
}

}  // namespace metawb::recfun
