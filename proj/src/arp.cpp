#include "metawb/arp.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace metawb::arp {

struct Term::Node {
  Kind kind;
  unsigned var = 0;
  std::string name;
  std::vector<Term> args;
};

Term Term::var(unsigned index) { return Term(std::make_shared<const Node>(Node{Kind::Var, index, {}, {}})); }
Term::Term() : Term(zero()) {}
Term Term::zero() { return Term(std::make_shared<const Node>(Node{Kind::Zero, 0, {}, {}})); }
Term Term::succ(Term t) {
  return Term(std::make_shared<const Node>(Node{Kind::Succ, 0, {}, {std::move(t)}}));
}
Term Term::app(std::string name, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{Kind::App, 0, std::move(name), std::move(args)}));
}
Term Term::numeral(unsigned n) {
  Term t = zero();
  for (unsigned i = 0; i < n; ++i) t = succ(t);
  return t;
}

Term::Kind Term::kind() const { return node_->kind; }
unsigned Term::var_index() const { return node_->var; }
const Term& Term::arg() const { return node_->args.front(); }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }

bool operator==(const Term& a, const Term& b) {
  const Term* x = &a;
  const Term* y = &b;
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->kind() != y->kind()) return false;
    switch (x->kind()) {
      case Term::Kind::Var: return x->var_index() == y->var_index();
      case Term::Kind::Zero: return true;
      case Term::Kind::Succ:
        x = &x->arg();
        y = &y->arg();
        continue;
      case Term::Kind::App:
        if (x->name() != y->name() || x->args().size() != y->args().size()) return false;
        for (std::size_t i = 0; i < x->args().size(); ++i)
          if (!(x->args()[i] == y->args()[i])) return false;
        return true;
    }
  }
}

std::string to_string(const Term& t) {
  std::string out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    const Term* cur = &u;
    std::size_t succs = 0;
    while (cur->kind() == Term::Kind::Succ) {
      out += "S(";
      ++succs;
      cur = &cur->arg();
    }
    switch (cur->kind()) {
      case Term::Kind::Var: out += "x" + std::to_string(cur->var_index()); break;
      case Term::Kind::Zero: out += "0"; break;
      case Term::Kind::App:
        out += cur->name() + "(";
        for (std::size_t i = 0; i < cur->args().size(); ++i) {
          if (i) out += ", ";
          go(cur->args()[i]);
        }
        out += ")";
        break;
      case Term::Kind::Succ: break;
    }
    out.append(succs, ')');
  };
  go(t);
  return out;
}

std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr unsigned kMaxNumeral = 10000;

class TermParser {
 public:
  TermParser(std::string_view s, std::size_t pos = 0) : s_(s), i_(pos) {}

  Term term() {
    Term t = product();
    while (peek() == '+') {
      ++i_;
      t = Term::app("add", {t, product()});
    }
    return t;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  std::size_t pos() const { return i_; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(i_, msg); }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

 private:
  std::string_view s_;
  std::size_t i_;

  Term product() {
    Term t = atom();
    while (peek() == '*') {
      ++i_;
      t = Term::app("mul", {t, atom()});
    }
    return t;
  }

  std::string ident() {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  Term atom() {
    char c = peek();
    if (c == '(') {
      ++i_;
      Term t = term();
      expect(')');
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      auto digits = s_.substr(start, i_ - start);
      if (digits.size() > 5 || std::stoul(std::string(digits)) > kMaxNumeral) {
        i_ = start;
        fail("numeral too large");
      }
      return Term::numeral(static_cast<unsigned>(std::stoul(std::string(digits))));
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a term");
    std::size_t start = i_;
    std::string id = ident();
    if (id.size() >= 2 && id[0] == 'x' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      if (id.size() > 8) {
        i_ = start;
        fail("variable index too large");
      }
      return Term::var(static_cast<unsigned>(std::stoul(id.substr(1))));
    }
    if (id == "S") {
      expect('(');
      Term t = term();
      expect(')');
      return Term::succ(t);
    }
    if (!std::islower(static_cast<unsigned char>(id[0])) && id[0] != '_') {
      i_ = start;
      fail("function letters start with a lowercase letter");
    }
    std::vector<Term> args;
    if (peek() == '(') {
      ++i_;
      if (peek() != ')') {
        args.push_back(term());
        while (peek() == ',') {
          ++i_;
          args.push_back(term());
        }
      }
      expect(')');
    }
    return Term::app(id, std::move(args));
  }
};

}  // namespace

Term parse_term(std::string_view text) {
  TermParser p(text);
  Term t = p.term();
  if (p.peek() != '\0') p.fail("unexpected trailing input");
  return t;
}

Equation parse_equation(std::string_view text) {
  TermParser p(text);
  Term l = p.term();
  p.expect('=');
  Term r = p.term();
  if (p.peek() != '\0') p.fail("unexpected trailing input");
  return {l, r};
}

std::set<unsigned> vars(const Term& t) {
  std::set<unsigned> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    const Term* cur = &u;
    while (cur->kind() == Term::Kind::Succ) cur = &cur->arg();
    if (cur->kind() == Term::Kind::Var) out.insert(cur->var_index());
    if (cur->kind() == Term::Kind::App)
      for (const auto& a : cur->args()) go(a);
  };
  go(t);
  return out;
}

bool is_closed(const Term& t) { return vars(t).empty(); }

Term substitute(const Term& t, const std::map<unsigned, Term>& sigma) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = sigma.find(t.var_index());
      return it == sigma.end() ? t : it->second;
    }
    case Term::Kind::Zero: return t;
    case Term::Kind::Succ: {
      std::size_t n = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++n;
        cur = &cur->arg();
      }
      Term out = substitute(*cur, sigma);
      for (std::size_t i = 0; i < n; ++i) out = Term::succ(out);
      return out;
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(substitute(a, sigma));
      return Term::app(t.name(), std::move(args));
    }
  }
  return t;
}

Term substitute(const Term& t, unsigned v, const Term& by) { return substitute(t, {{v, by}}); }

namespace {

Equation subst_eq(const Equation& e, const std::map<unsigned, Term>& sigma) {
  return {substitute(e.lhs, sigma), substitute(e.rhs, sigma)};
}

std::set<unsigned> vars(const Equation& e) {
  auto a = arp::vars(e.lhs);
  auto b = arp::vars(e.rhs);
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Definitions

namespace {

// Letters used in t must be defined with matching arity; `self` (the
// definition under check) may appear only where `self_ok` allows.
std::optional<std::string> check_letters(const Term& t, const Environment& env, const PRDefinition& d,
                                         const std::function<bool(const Term&)>& self_ok) {
  if (t.kind() == Term::Kind::Succ) return check_letters(t.arg(), env, d, self_ok);
  if (t.kind() != Term::Kind::App) return std::nullopt;
  if (t.name() == d.name) {
    if (!self_ok(t)) return "recursive call " + to_string(t) + " is not of primitive-recursive shape";
  } else if (const PRDefinition* g = env.find(t.name())) {
    if (g->arity != t.args().size())
      return "letter " + t.name() + " has arity " + std::to_string(g->arity) + ", used with " +
             std::to_string(t.args().size()) + " argument(s)";
  } else {
    return "undeclared letter " + t.name();
  }
  for (const auto& a : t.args())
    if (auto why = check_letters(a, env, d, self_ok)) return why;
  return std::nullopt;
}

bool distinct_vars(const std::vector<Term>& ts) {
  std::set<unsigned> seen;
  for (const auto& t : ts)
    if (t.kind() != Term::Kind::Var || !seen.insert(t.var_index()).second) return false;
  return true;
}

std::optional<std::string> subset_vars(const Term& rhs, const std::vector<Term>& params) {
  std::set<unsigned> allowed;
  for (const auto& p : params)
    if (p.kind() == Term::Kind::Var) allowed.insert(p.var_index());
  for (unsigned v : arp::vars(rhs))
    if (!allowed.count(v)) return "right-hand side uses x" + std::to_string(v) + " not bound on the left";
  return std::nullopt;
}

}  // namespace

DefinitionCheck check_pr_definition(const PRDefinition& d, const Environment& env) {
  auto reject = [](std::string why) { return DefinitionCheck{false, std::move(why)}; };
  if (d.name.empty() || d.name == "S" || !std::islower(static_cast<unsigned char>(d.name[0])))
    return reject("invalid letter name '" + d.name + "'");
  if (env.find(d.name)) return reject("letter " + d.name + " is already defined");
  for (const auto& e : d.equations) {
    if (e.lhs.kind() != Term::Kind::App || e.lhs.name() != d.name)
      return reject("left-hand side " + to_string(e.lhs) + " is not an application of " + d.name);
    if (e.lhs.args().size() != d.arity)
      return reject("left-hand side " + to_string(e.lhs) + " does not have arity " + std::to_string(d.arity));
  }
  auto never = [](const Term&) { return false; };

  if (d.equations.size() == 1) {
    const Equation& e = d.equations[0];
    if (!distinct_vars(e.lhs.args())) return reject("explicit definition needs distinct variables on the left");
    if (auto why = subset_vars(e.rhs, e.lhs.args())) return reject(*why);
    if (auto why = check_letters(e.rhs, env, d, never)) return reject(*why);
    return {true, ""};
  }
  if (d.equations.size() != 2) return reject("expected one explicit equation or a base and a step equation");

  const auto& base = d.equations[0].lhs.args();
  const auto& step = d.equations[1].lhs.args();
  std::optional<std::size_t> k;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i].kind() == Term::Kind::Zero) {
      if (k) return reject("base equation has several 0 arguments");
      k = i;
    }
  if (!k) return reject("base equation has no argument 0");
  std::optional<std::size_t> ks;
  for (std::size_t i = 0; i < step.size(); ++i)
    if (step[i].kind() == Term::Kind::Succ) {
      if (ks) return reject("step equation has several successor arguments");
      ks = i;
    }
  if (!ks) return reject("step equation has no argument of the form S(x)");
  if (*ks != *k)
    return reject("step equation recurses on position " + std::to_string(*ks + 1) +
                  " but the base equation is on position " + std::to_string(*k + 1));
  if (step[*k].arg().kind() != Term::Kind::Var) return reject("step argument must be S of a variable");

  std::vector<Term> base_params, step_params;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (i != *k) base_params.push_back(base[i]);
  step_params = base_params;
  step_params.clear();
  for (std::size_t i = 0; i < step.size(); ++i) step_params.push_back(i == *k ? step[i].arg() : step[i]);
  if (!distinct_vars(base_params)) return reject("base equation needs distinct parameter variables");
  if (!distinct_vars(step_params)) return reject("step equation needs distinct variables");

  const Term& base_rhs = d.equations[0].rhs;
  const Term& step_rhs = d.equations[1].rhs;
  if (auto why = subset_vars(base_rhs, base_params)) return reject(*why);
  if (auto why = check_letters(base_rhs, env, d, never)) return reject(*why);
  if (auto why = subset_vars(step_rhs, step_params)) return reject(*why);
  Term expected_call = Term::app(d.name, step_params);
  auto self_ok = [&](const Term& t) { return t == expected_call; };
  if (auto why = check_letters(step_rhs, env, d, self_ok)) return reject(*why);
  return {true, ""};
}

void Environment::add(const PRDefinition& d) {
  DefinitionCheck c = check_pr_definition(d, *this);
  if (!c.accepted) throw DefinitionError(d.name + ": " + c.reason);
  std::optional<std::size_t> pos;
  if (d.equations.size() == 2) {
    const auto& args = d.equations[0].lhs.args();
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].kind() == Term::Kind::Zero) pos = i;
  }
  defs_.push_back(d);
  positions_.push_back(pos);
}

const PRDefinition* Environment::find(std::string_view name) const {
  for (const auto& d : defs_)
    if (d.name == name) return &d;
  return nullptr;
}

std::optional<std::size_t> Environment::recursion_position(std::string_view name) const {
  for (std::size_t i = 0; i < defs_.size(); ++i)
    if (defs_[i].name == name) return positions_[i];
  return std::nullopt;
}

Environment parse_environment(std::string_view text) {
  Environment env;
  std::optional<PRDefinition> cur;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  auto flush = [&] {
    if (cur) env.add(*cur);
    cur.reset();
  };
  while (std::getline(in, line)) {
    std::size_t line_start = offset;
    offset += line.size() + 1;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    auto slash = line.find('/');
    if (colon == std::string::npos || slash == std::string::npos || slash > colon)
      throw ParseError(line_start, "expected 'letter/arity: lhs = rhs'");
    std::string name = line.substr(0, slash);
    name.erase(0, name.find_first_not_of(" \t"));
    std::string ar = line.substr(slash + 1, colon - slash - 1);
    if (ar.empty() || ar.size() > 3 || ar.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(line_start + slash + 1, "bad arity");
    Equation e;
    try {
      e = parse_equation(std::string_view(line).substr(colon + 1));
    } catch (const ParseError& pe) {
      throw ParseError(line_start + colon + 1 + pe.position(), pe.message());
    }
    if (!cur || cur->name != name) {
      flush();
      cur = PRDefinition{name, std::stoul(ar), {}};
    } else if (cur->arity != std::stoul(ar)) {
      throw ParseError(line_start + slash + 1, "arity differs from the previous line");
    }
    cur->equations.push_back(e);
  }
  flush();
  return env;
}

std::string print_environment(const Environment& env) {
  std::string out;
  for (const auto& d : env.definitions())
    for (const auto& e : d.equations) out += d.name + "/" + std::to_string(d.arity) + ": " + to_string(e) + "\n";
  return out;
}

Environment standard_environment() {
  return parse_environment(
      "add/2: add(x0, 0) = x0\n"
      "add/2: add(x0, S(x1)) = S(add(x0, x1))\n"
      "mul/2: mul(x0, 0) = 0\n"
      "mul/2: mul(x0, S(x1)) = add(mul(x0, x1), x0)\n"
      "exp2/1: exp2(0) = S(0)\n"
      "exp2/1: exp2(S(x0)) = add(exp2(x0), exp2(x0))\n");
}

// ---------------------------------------------------------------------------
// Valuation

Valuator::Valuator(const Environment& env, std::uint64_t max_steps) : env_(env), max_steps_(max_steps) {}

void Valuator::tick() {
  if (++steps_ > max_steps_) throw ValuationBudgetExceeded("valuation exceeded " + std::to_string(max_steps_) + " steps");
}

Natural Valuator::operator()(const Term& t) {
  if (!is_closed(t)) throw std::invalid_argument("valuation of an open term " + to_string(t));
  return eval(t, {}, nullptr, nullptr);
}

Natural Valuator::eval(const Term& t, const std::map<unsigned, Natural>& binding, const std::string* self,
                       const Natural* self_value) {
  tick();
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = binding.find(t.var_index());
      if (it == binding.end()) throw std::invalid_argument("free variable x" + std::to_string(t.var_index()));
      return it->second;
    }
    case Term::Kind::Zero: return 0;
    case Term::Kind::Succ: {
      Natural n = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++n;
        cur = &cur->arg();
      }
      return eval(*cur, binding, self, self_value) + n;
    }
    case Term::Kind::App: {
      if (self && t.name() == *self) return *self_value;
      std::vector<Natural> args;
      for (const auto& a : t.args()) args.push_back(eval(a, binding, self, self_value));
      return call(t.name(), args);
    }
  }
  return 0;
}

Natural Valuator::call(const std::string& name, const std::vector<Natural>& args) {
  const PRDefinition* d = env_.find(name);
  if (!d) throw std::invalid_argument("undefined letter " + name);
  if (d->arity != args.size()) throw std::invalid_argument("arity mismatch for " + name);
  auto& table = memo_[name];
  if (auto it = table.find(args); it != table.end()) return it->second;

  Natural result;
  auto bind = [&](const std::vector<Term>& params, std::map<unsigned, Natural>& b, std::optional<std::size_t> skip) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (skip && i == *skip) continue;
      b[params[i].var_index()] = args[i];
    }
  };
  auto k = env_.recursion_position(name);
  if (!k) {
    std::map<unsigned, Natural> b;
    bind(d->equations[0].lhs.args(), b, std::nullopt);
    result = eval(d->equations[0].rhs, b, nullptr, nullptr);
  } else {
    const Natural& n = args[*k];
    if (n > max_steps_) throw ValuationBudgetExceeded("recursion depth of " + name + " exceeds the step budget");
    std::map<unsigned, Natural> base;
    bind(d->equations[0].lhs.args(), base, k);
    Natural v = eval(d->equations[0].rhs, base, nullptr, nullptr);
    std::map<unsigned, Natural> step;
    bind(d->equations[1].lhs.args(), step, k);
    unsigned y = d->equations[1].lhs.args()[*k].arg().var_index();
    for (Natural i = 0; i < n; ++i) {
      step[y] = i;
      v = eval(d->equations[1].rhs, step, &d->name, &v);
    }
    result = v;
  }
  table.emplace(args, result);
  return result;
}

Natural valuate(const Term& t, const Environment& env) { return Valuator(env)(t); }

// ---------------------------------------------------------------------------
// Proof checking

namespace {

struct LineInfo {
  Equation eq;
  std::set<std::size_t> deps;     // hypothesis lines
  std::optional<unsigned> hyp;    // set on hyp lines
};

// Checks one line against the lines before it; returns the reason on failure.
std::optional<std::string> check_line(const ProofLine& l, const std::vector<LineInfo>& prior,
                                      const Environment& env, LineInfo& out) {
  const Justification& j = l.just;
  const Equation& eq = l.eq;
  const std::size_t here = prior.size();
  for (std::size_t k : j.lines)
    if (k >= here) return "cites line " + std::to_string(k + 1) + ", which is not earlier";
  auto want_lines = [&](std::size_t n) -> std::optional<std::string> {
    if (j.lines.size() != n) return "expected " + std::to_string(n) + " cited line(s)";
    return std::nullopt;
  };
  out = LineInfo{eq, {}, std::nullopt};
  using K = Justification::Kind;
  switch (j.kind) {
    case K::Axiom: {
      const PRDefinition* d = env.find(j.letter);
      if (!d) return "no definition of " + j.letter;
      if (j.equation < 1 || j.equation > d->equations.size())
        return j.letter + " has no equation " + std::to_string(j.equation);
      Equation inst = subst_eq(d->equations[j.equation - 1], j.sigma);
      if (!(inst == eq)) return "axiom instance is " + to_string(inst);
      return std::nullopt;
    }
    case K::Refl:
      if (!(eq.lhs == eq.rhs)) return "reflexivity needs identical sides";
      return std::nullopt;
    case K::Sym: {
      if (auto w = want_lines(1)) return w;
      const LineInfo& a = prior[j.lines[0]];
      if (!(a.eq.lhs == eq.rhs && a.eq.rhs == eq.lhs)) return "not the symmetric of the cited line";
      out.deps = a.deps;
      return std::nullopt;
    }
    case K::Trans: {
      if (auto w = want_lines(2)) return w;
      const LineInfo& a = prior[j.lines[0]];
      const LineInfo& b = prior[j.lines[1]];
      if (!(a.eq.rhs == b.eq.lhs)) return "cited lines do not chain";
      if (!(a.eq.lhs == eq.lhs && b.eq.rhs == eq.rhs)) return "conclusion does not match the chained lines";
      out.deps = a.deps;
      out.deps.insert(b.deps.begin(), b.deps.end());
      return std::nullopt;
    }
    case K::Cong: {
      std::vector<Term> ls, rs;
      for (std::size_t k : j.lines) {
        ls.push_back(prior[k].eq.lhs);
        rs.push_back(prior[k].eq.rhs);
        out.deps.insert(prior[k].deps.begin(), prior[k].deps.end());
      }
      Equation expect;
      if (j.letter == "S") {
        if (auto w = want_lines(1)) return w;
        expect = {Term::succ(ls[0]), Term::succ(rs[0])};
      } else {
        const PRDefinition* d = env.find(j.letter);
        if (!d) return "no definition of " + j.letter;
        if (d->arity != j.lines.size()) return j.letter + " takes " + std::to_string(d->arity) + " argument(s)";
        expect = {Term::app(j.letter, ls), Term::app(j.letter, rs)};
      }
      if (!(expect == eq)) return "congruence yields " + to_string(expect);
      return std::nullopt;
    }
    case K::Subst: {
      if (auto w = want_lines(1)) return w;
      if (!j.term) return "substitution needs a term";
      const LineInfo& a = prior[j.lines[0]];
      for (std::size_t h : a.deps) {
        const LineInfo& hyp = prior[h];
        if (*hyp.hyp == j.var || vars(hyp.eq).count(j.var))
          return "x" + std::to_string(j.var) + " is fixed by the hypothesis on line " + std::to_string(h + 1);
      }
      Equation expect = subst_eq(a.eq, {{j.var, *j.term}});
      if (!(expect == eq)) return "substitution yields " + to_string(expect);
      out.deps = a.deps;
      return std::nullopt;
    }
    case K::Hyp:
      out.deps = {here};
      out.hyp = j.var;
      return std::nullopt;
    case K::Ind: {
      if (auto w = want_lines(2)) return w;
      const LineInfo& b = prior[j.lines[0]];
      const LineInfo& s = prior[j.lines[1]];
      const unsigned x = j.var;
      Equation base = subst_eq(eq, {{x, Term::zero()}});
      Equation step = subst_eq(eq, {{x, Term::succ(Term::var(x))}});
      if (!(b.eq == base)) return "base line should be " + to_string(base);
      if (!(s.eq == step)) return "step line should be " + to_string(step);
      auto discharged = [&](std::size_t h) { return *prior[h].hyp == x && prior[h].eq == eq; };
      for (std::size_t h : b.deps)
        if (discharged(h)) return "base line depends on the induction hypothesis";
      out.deps = b.deps;
      for (std::size_t h : s.deps)
        if (!discharged(h)) out.deps.insert(h);
      for (std::size_t h : out.deps)
        if (*prior[h].hyp == x || vars(prior[h].eq).count(x))
          return "x" + std::to_string(x) + " is fixed by the open hypothesis on line " + std::to_string(h + 1);
      return std::nullopt;
    }
  }
  return "unknown justification";
}

}  // namespace

ProofCheck check_equational_proof(const EquationalProof& p, const Environment& env) {
  if (p.empty()) return {false, 0, "empty proof"};
  std::vector<LineInfo> info;
  for (std::size_t i = 0; i < p.size(); ++i) {
    LineInfo li;
    if (auto why = check_line(p[i], info, env, li)) return {false, i, *why};
    info.push_back(std::move(li));
  }
  if (!info.back().deps.empty())
    return {false, p.size() - 1,
            "conclusion depends on the open hypothesis on line " + std::to_string(*info.back().deps.begin() + 1)};
  return {true, 0, ""};
}

bool audit_soundness(const EquationalProof& p, const Environment& env) {
  ProofCheck c = check_equational_proof(p, env);
  if (!c.valid) throw std::invalid_argument("audit_soundness: proof is invalid at line " + std::to_string(c.line + 1));
  const Equation& e = p.back().eq;
  if (!is_closed(e.lhs) || !is_closed(e.rhs)) throw std::invalid_argument("audit_soundness: open conclusion");
  Valuator v(env);
  return v(e.lhs) == v(e.rhs);
}

// ---------------------------------------------------------------------------
// Proof files

namespace {

std::string just_to_string(const Justification& j) {
  using K = Justification::Kind;
  auto lines = [&] {
    std::string s;
    for (std::size_t k : j.lines) s += " " + std::to_string(k + 1);
    return s;
  };
  switch (j.kind) {
    case K::Axiom: {
      std::string s = "axiom " + j.letter + "." + std::to_string(j.equation);
      bool first = true;
      for (const auto& [v, t] : j.sigma) {
        s += (first ? " " : ", ") + ("x" + std::to_string(v)) + " := " + to_string(t);
        first = false;
      }
      return s;
    }
    case K::Refl: return "refl";
    case K::Sym: return "sym" + lines();
    case K::Trans: return "trans" + lines();
    case K::Cong: return "cong " + j.letter + lines();
    case K::Subst: return "subst" + lines() + " x" + std::to_string(j.var) + " := " + to_string(*j.term);
    case K::Hyp: return "hyp x" + std::to_string(j.var);
    case K::Ind: return "ind" + lines() + " x" + std::to_string(j.var);
  }
  return "?";
}

class JustParser {
 public:
  JustParser(std::string_view s, std::size_t base) : s_(s), base_(base) {}

  Justification parse() {
    Justification j;
    std::string head = word();
    using K = Justification::Kind;
    if (head == "axiom") {
      j.kind = K::Axiom;
      std::string ref = word();
      auto dot = ref.rfind('.');
      if (dot == std::string::npos || dot + 1 == ref.size() ||
          ref.find_first_not_of("0123456789", dot + 1) != std::string::npos || ref.size() - dot > 4)
        fail("expected name.k");
      j.letter = ref.substr(0, dot);
      j.equation = std::stoul(ref.substr(dot + 1));
      skip();
      while (i_ < s_.size()) {
        unsigned v = var();
        assign();
        j.sigma[v] = term();
        skip();
        if (i_ < s_.size()) {
          if (s_[i_] != ',') fail("expected ','");
          ++i_;
        }
      }
    } else if (head == "refl") {
      j.kind = K::Refl;
    } else if (head == "sym") {
      j.kind = K::Sym;
      j.lines = {line()};
    } else if (head == "trans") {
      j.kind = K::Trans;
      j.lines = {line(), line()};
    } else if (head == "cong") {
      j.kind = K::Cong;
      j.letter = word();
      skip();
      while (i_ < s_.size()) {
        j.lines.push_back(line());
        skip();
      }
    } else if (head == "subst") {
      j.kind = K::Subst;
      j.lines = {line()};
      j.var = var();
      assign();
      j.term = term();
    } else if (head == "hyp") {
      j.kind = K::Hyp;
      j.var = var();
    } else if (head == "ind") {
      j.kind = K::Ind;
      j.lines = {line(), line()};
      j.var = var();
    } else {
      fail("unknown justification '" + head + "'");
    }
    skip();
    if (i_ < s_.size()) fail("unexpected trailing input in justification");
    return j;
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(base_ + i_, msg); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string word() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != ',') ++i_;
    if (start == i_) fail("expected a word");
    return std::string(s_.substr(start, i_ - start));
  }
  std::size_t line() {
    std::string w = word();
    if (w.size() > 6 || w.find_first_not_of("0123456789") != std::string::npos || std::stoul(w) == 0)
      fail("expected a line number");
    return std::stoul(w) - 1;
  }
  unsigned var() {
    skip();
    std::size_t start = i_;
    if (i_ >= s_.size() || s_[i_] != 'x') fail("expected a variable");
    ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ - start < 2 || i_ - start > 8) fail("expected a variable");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start + 1, i_ - start - 1))));
  }
  void assign() {
    skip();
    if (s_.substr(i_, 2) != ":=") fail("expected ':='");
    i_ += 2;
  }
  Term term() {
    TermParser p(s_, i_);
    try {
      Term t = p.term();
      i_ = p.pos();
      return t;
    } catch (const ParseError& e) {
      throw ParseError(base_ + e.position(), e.message());
    }
  }
};

}  // namespace

EquationalProof parse_proof(std::string_view text) {
  EquationalProof out;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::string_view line = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
    std::size_t base = offset;
    offset = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::size_t i = line.find_first_not_of(" \t");
    std::size_t dot = line.find('.', i);
    if (dot == std::string_view::npos || dot == i || dot - i > 6 ||
        line.substr(i, dot - i).find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError(base + i, "expected a line number 'n.'");
    if (std::stoul(std::string(line.substr(i, dot - i))) != out.size() + 1)
      throw ParseError(base + i, "line numbers must run 1, 2, 3, ...");
    std::size_t open = line.find('[', dot);
    std::size_t close = line.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
      throw ParseError(base + dot, "expected '[justification]'");
    if (line.substr(close + 1).find_first_not_of(" \t\r") != std::string_view::npos)
      throw ParseError(base + close + 1, "unexpected text after ']'");
    ProofLine pl;
    try {
      pl.eq = parse_equation(line.substr(dot + 1, open - dot - 1));
    } catch (const ParseError& e) {
      throw ParseError(base + dot + 1 + e.position(), e.message());
    }
    pl.just = JustParser(line.substr(open + 1, close - open - 1), base + open + 1).parse();
    out.push_back(std::move(pl));
  }
  return out;
}

std::string print_proof(const EquationalProof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out += std::to_string(i + 1) + ". " + to_string(p[i].eq) + " [" + just_to_string(p[i].just) + "]\n";
  return out;
}

// ---------------------------------------------------------------------------
// Random valid proofs

namespace {

using K = Justification::Kind;

Justification make_just(K k) {
  Justification j;
  j.kind = k;
  return j;
}

class ProofGen {
 public:
  ProofGen(const Environment& env, std::mt19937_64& rng) : env_(env), rng_(rng), val_(env, 200'000) {}

  EquationalProof run(std::size_t steps) {
    if (rng_() % 3 == 0) induction_block();
    for (std::size_t s = 0; s < steps; ++s) step();
    // Prefer a non-trivial conclusion, closing an open one by substitution.
    std::vector<std::size_t> closed, open;
    for (std::size_t i = 0; i < proof_.size(); ++i) {
      if (!info_[i].deps.empty() || proof_[i].eq.lhs == proof_[i].eq.rhs) continue;
      (vars(proof_[i].eq).empty() ? closed : open).push_back(i);
    }
    if (closed.empty() && !open.empty()) {
      std::size_t k = open[pick(open.size())];
      for (unsigned v : vars(proof_[k].eq)) {
        Justification j = make_just(K::Subst);
        j.lines = {k};
        j.var = v;
        j.term = Term::numeral(static_cast<unsigned>(pick(4)));
        if (!push({subst_eq(proof_[k].eq, {{v, *j.term}}), j})) break;
        k = proof_.size() - 1;
      }
      if (vars(proof_[k].eq).empty()) closed.push_back(k);
    }
    if (closed.empty()) {
      Term t = small();
      push({{t, t}, make_just(K::Refl)});
    } else {
      std::size_t k = closed[pick(closed.size())];
      Justification j = make_just(K::Sym);
      j.lines = {k};
      push({{proof_[k].eq.rhs, proof_[k].eq.lhs}, j});
    }
    return proof_;
  }

 private:
  const Environment& env_;
  std::mt19937_64& rng_;
  Valuator val_;
  EquationalProof proof_;
  std::vector<LineInfo> info_;

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  bool push(const ProofLine& l) {
    LineInfo li;
    if (check_line(l, info_, env_, li)) return false;
    proof_.push_back(l);
    info_.push_back(std::move(li));
    return true;
  }

  bool cheap(const Term& t) {
    if (to_string(t).size() > 160) return false;
    if (!is_closed(t)) return true;
    try {
      val_(t);
      return true;
    } catch (const ValuationBudgetExceeded&) {
      return false;
    }
  }

  Term small() {
    const auto& defs = env_.definitions();
    if (defs.empty() || pick(2) == 0) return Term::numeral(static_cast<unsigned>(pick(4)));
    const PRDefinition& d = defs[pick(defs.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < d.arity; ++i) args.push_back(Term::numeral(static_cast<unsigned>(pick(3))));
    return Term::app(d.name, args);
  }

  // 0 + x = x by induction on x, when the environment has the usual add.
  void induction_block() {
    if (!env_.find("add")) return;
    EquationalProof block = parse_proof(
        "1. add(0, 0) = 0 [axiom add.1 x0 := 0]\n"
        "2. add(0, x0) = x0 [hyp x0]\n"
        "3. add(0, S(x0)) = S(add(0, x0)) [axiom add.2 x0 := 0, x1 := x0]\n"
        "4. S(add(0, x0)) = S(x0) [cong S 2]\n"
        "5. add(0, S(x0)) = S(x0) [trans 3 4]\n"
        "6. add(0, x0) = x0 [ind 1 5 x0]\n");
    std::size_t shift = proof_.size();
    for (auto& l : block) {
      for (auto& k : l.just.lines) k += shift;
      if (!push(l)) return;
    }
  }

  void step() {
    const std::size_t n = proof_.size();
    switch (pick(7)) {
      case 0: {
        const auto& defs = env_.definitions();
        if (defs.empty()) break;
        const PRDefinition& d = defs[pick(defs.size())];
        std::size_t e = pick(d.equations.size());
        Justification j = make_just(K::Axiom);
        j.letter = d.name;
        j.equation = e + 1;
        for (unsigned v : vars(d.equations[e]))
          if (pick(4) != 0) j.sigma[v] = small();
        Equation inst = subst_eq(d.equations[e], j.sigma);
        if (cheap(inst.lhs) && cheap(inst.rhs)) push({inst, j});
        return;
      }
      case 1: {
        Term t = small();
        if (cheap(t)) push({{t, t}, make_just(K::Refl)});
        return;
      }
      case 2: {
        if (!n) break;
        std::size_t k = pick(n);
        Justification j = make_just(K::Sym);
        j.lines = {k};
        push({{proof_[k].eq.rhs, proof_[k].eq.lhs}, j});
        return;
      }
      case 3: {
        if (!n) break;
        std::size_t a = pick(n);
        std::vector<std::size_t> next;
        for (std::size_t b = 0; b < n; ++b)
          if (proof_[b].eq.lhs == proof_[a].eq.rhs) next.push_back(b);
        if (next.empty()) break;
        std::size_t b = next[pick(next.size())];
        Justification j = make_just(K::Trans);
        j.lines = {a, b};
        push({{proof_[a].eq.lhs, proof_[b].eq.rhs}, j});
        return;
      }
      case 4: {
        if (!n) break;
        Justification j = make_just(K::Cong);
        const auto& defs = env_.definitions();
        std::size_t arity = 1;
        if (defs.empty() || pick(2) == 0) {
          j.letter = "S";
        } else {
          const PRDefinition& d = defs[pick(defs.size())];
          j.letter = d.name;
          arity = d.arity;
        }
        std::vector<Term> ls, rs;
        for (std::size_t i = 0; i < arity; ++i) {
          std::size_t k = pick(n);
          j.lines.push_back(k);
          ls.push_back(proof_[k].eq.lhs);
          rs.push_back(proof_[k].eq.rhs);
        }
        Equation e = j.letter == "S" ? Equation{Term::succ(ls[0]), Term::succ(rs[0])}
                                     : Equation{Term::app(j.letter, ls), Term::app(j.letter, rs)};
        if (cheap(e.lhs) && cheap(e.rhs)) push({e, j});
        return;
      }
      case 5: {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < n; ++i)
          if (!vars(proof_[i].eq).empty() && info_[i].deps.empty()) open.push_back(i);
        if (open.empty()) break;
        std::size_t k = open[pick(open.size())];
        auto vs = vars(proof_[k].eq);
        unsigned v = *std::next(vs.begin(), static_cast<long>(pick(vs.size())));
        Justification j = make_just(K::Subst);
        j.lines = {k};
        j.var = v;
        j.term = small();
        Equation e = subst_eq(proof_[k].eq, {{v, *j.term}});
        if (cheap(e.lhs) && cheap(e.rhs)) push({e, j});
        return;
      }
      default: {
        if (!n) break;
        // Repeat a closed fact through reflexivity and transitivity.
        std::size_t k = pick(n);
        Justification r = make_just(K::Refl);
        Term t = proof_[k].eq.rhs;
        if (!push({{t, t}, r})) return;
        Justification j = make_just(K::Trans);
        j.lines = {k, proof_.size() - 1};
        push({proof_[k].eq, j});
        return;
      }
    }
    Term t = small();
    if (cheap(t)) push({{t, t}, make_just(K::Refl)});
  }
};

}  // namespace

EquationalProof random_proof(const Environment& env, std::mt19937_64& rng, std::size_t steps) {
  return ProofGen(env, rng).run(steps);
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

class Search {
 public:
  Search(const Environment& env, const Equation& target, std::size_t max_lines, const std::vector<Term>& terms)
      : env_(env), target_(target), max_lines_(max_lines), terms_(terms) {
    for (const auto& t : terms_) {
      auto vs = arp::vars(t);
      term_vars_.insert(vs.begin(), vs.end());
    }
  }

  SearchReport run() {
    explore();
    return report_;
  }

 private:
  const Environment& env_;
  Equation target_;
  std::size_t max_lines_;
  std::vector<Term> terms_;
  std::set<unsigned> term_vars_;
  SearchReport report_;
  EquationalProof proof_;
  std::vector<LineInfo> info_;
  std::vector<std::string> keys_;
  std::set<std::vector<std::string>> seen_;

  std::string key(const LineInfo& li) const {
    std::string k = to_string(li.eq);
    if (li.hyp) k += " @hyp x" + std::to_string(*li.hyp);
    for (std::size_t h : li.deps)
      if (h != info_.size()) k += " |" + keys_[h];
    return k;
  }

  void candidates(const std::function<void(const ProofLine&)>& emit) {
    const std::size_t n = proof_.size();
    for (const auto& d : env_.definitions())
      for (std::size_t e = 0; e < d.equations.size(); ++e) {
        std::vector<unsigned> vs;
        for (unsigned v : vars(d.equations[e])) vs.push_back(v);
        std::vector<std::size_t> idx(vs.size(), 0);
        while (true) {
          Justification j = make_just(K::Axiom);
          j.letter = d.name;
          j.equation = e + 1;
          for (std::size_t i = 0; i < vs.size(); ++i) j.sigma[vs[i]] = terms_[idx[i]];
          emit({subst_eq(d.equations[e], j.sigma), j});
          std::size_t i = 0;
          while (i < idx.size() && ++idx[i] == terms_.size()) idx[i++] = 0;
          if (i == idx.size()) break;
        }
      }
    for (const auto& t : terms_) emit({{t, t}, make_just(K::Refl)});
    for (unsigned v : term_vars_)
      for (const auto& a : terms_)
        for (const auto& b : terms_) {
          Justification j = make_just(K::Hyp);
          j.var = v;
          emit({{a, b}, j});
        }
    for (std::size_t k = 0; k < n; ++k) {
      Justification j = make_just(K::Sym);
      j.lines = {k};
      emit({{proof_[k].eq.rhs, proof_[k].eq.lhs}, j});
      Justification c = make_just(K::Cong);
      c.letter = "S";
      c.lines = {k};
      emit({{Term::succ(proof_[k].eq.lhs), Term::succ(proof_[k].eq.rhs)}, c});
      for (unsigned v : vars(proof_[k].eq))
        for (const auto& t : terms_) {
          if (t == Term::var(v)) continue;
          Justification s = make_just(K::Subst);
          s.lines = {k};
          s.var = v;
          s.term = t;
          emit({subst_eq(proof_[k].eq, {{v, t}}), s});
        }
      for (std::size_t m = 0; m < n; ++m) {
        if (proof_[k].eq.rhs == proof_[m].eq.lhs) {
          Justification t = make_just(K::Trans);
          t.lines = {k, m};
          emit({{proof_[k].eq.lhs, proof_[m].eq.rhs}, t});
        }
        for (std::size_t h : info_[m].deps) {
          Justification i = make_just(K::Ind);
          i.lines = {k, m};
          i.var = *info_[h].hyp;
          emit({proof_[h].eq, i});
        }
      }
    }
    for (const auto& d : env_.definitions()) {
      std::vector<std::size_t> idx(d.arity, 0);
      if (n == 0 && d.arity > 0) continue;
      while (true) {
        Justification j = make_just(K::Cong);
        j.letter = d.name;
        std::vector<Term> ls, rs;
        for (std::size_t k : idx) {
          j.lines.push_back(k);
          ls.push_back(proof_[k].eq.lhs);
          rs.push_back(proof_[k].eq.rhs);
        }
        emit({{Term::app(d.name, ls), Term::app(d.name, rs)}, j});
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
  }

  void explore() {
    std::vector<std::string> state = keys_;
    std::sort(state.begin(), state.end());
    if (!seen_.insert(state).second) return;
    ++report_.states;
    if (proof_.size() >= max_lines_ || report_.found) return;
    std::vector<std::pair<ProofLine, LineInfo>> next;
    std::set<std::string> fresh;
    candidates([&](const ProofLine& l) {
      LineInfo li;
      if (check_line(l, info_, env_, li)) return;
      std::string k = key(li);
      if (std::find(keys_.begin(), keys_.end(), k) != keys_.end() || !fresh.insert(k).second) return;
      next.emplace_back(l, std::move(li));
    });
    const bool last = proof_.size() + 1 == max_lines_;
    for (auto& [l, li] : next) {
      if (last) {
        if (!li.deps.empty()) continue;
        ++report_.proofs;
        if (l.eq == target_ && !report_.found) {
          report_.found = true;
          report_.witness = proof_;
          report_.witness.push_back(l);
        }
        continue;
      }
      std::string k = key(li);
      proof_.push_back(l);
      info_.push_back(li);
      keys_.push_back(k);
      if (li.deps.empty()) {
        ++report_.proofs;
        if (l.eq == target_ && !report_.found) {
          report_.found = true;
          report_.witness = proof_;
        }
      }
      explore();
      proof_.pop_back();
      info_.pop_back();
      keys_.pop_back();
    }
  }
};

}  // namespace

SearchReport search_proofs(const Environment& env, const Equation& target, std::size_t max_lines,
                           const std::vector<Term>& terms) {
  return Search(env, target, max_lines, terms).run();
}

}  // namespace metawb::arp
