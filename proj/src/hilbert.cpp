#include "metawb/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace metawb::hilbert {

using syntax::Term;
using syntax::VarId;
using FK = Formula::Kind;

namespace {

Formula core(const Formula& f) { return syntax::normalize_core(f); }

// ~exists x ~B  (or a literal forall) -> B
const Formula* universal_body(const Formula& g, VarId* bound = nullptr) {
  if (g.kind() == FK::Forall) {
    if (bound) *bound = g.bound();
    return &g.sub();
  }
  if (g.kind() == FK::Not && g.sub().kind() == FK::Exists && g.sub().sub().kind() == FK::Not) {
    if (bound) *bound = g.sub().bound();
    return &g.sub().sub().sub();
  }
  return nullptr;
}

bool is_var(const Term& t) { return t.kind() == Term::Kind::Var; }

// (x1=y1) & (x2=y2) => f(x1,x2) = f(y1,y2), and the unary case for S.
bool function_congruence(const Formula& g) {
  if (g.kind() != FK::Or || g.right().kind() != FK::Eq) return false;
  const Term& l = g.right().left_term();
  const Term& r = g.right().right_term();
  if (l.kind() != r.kind()) return false;
  Formula expect = g;
  switch (l.kind()) {
    case Term::Kind::Succ:
      if (!is_var(l.lhs()) || !is_var(r.lhs())) return false;
      expect = core(Formula::implies(Formula::eq(l.lhs(), r.lhs()), Formula::eq(l, r)));
      break;
    case Term::Kind::Plus:
    case Term::Kind::Times:
      if (!is_var(l.lhs()) || !is_var(l.rhs()) || !is_var(r.lhs()) || !is_var(r.rhs()))
        return false;
      expect = core(Formula::implies(
          Formula::conj(Formula::eq(l.lhs(), r.lhs()), Formula::eq(l.rhs(), r.rhs())),
          Formula::eq(l, r)));
      break;
    default: return false;
  }
  return expect == g;
}

Formula rebuild_atom(FK k, const Term& a, const Term& b) {
  switch (k) {
    case FK::Eq: return Formula::eq(a, b);
    case FK::Lt: return Formula::lt(a, b);
    default: return Formula::mem(a, b);
  }
}

// (x1=y1) & (x2=y2) => (P(x1,x2) => P(y1,y2))
bool predicate_congruence(const Formula& g) {
  if (g.kind() != FK::Or || g.right().kind() != FK::Or) return false;
  const Formula& inner = g.right();
  if (inner.sub().kind() != FK::Not) return false;
  const Formula& p1 = inner.sub().sub();
  const Formula& p2 = inner.right();
  if (!p1.is_atom() || p1.kind() != p2.kind()) return false;
  if (!is_var(p1.left_term()) || !is_var(p1.right_term()) || !is_var(p2.left_term()) ||
      !is_var(p2.right_term()))
    return false;
  Formula expect = core(Formula::implies(
      Formula::conj(Formula::eq(p1.left_term(), p2.left_term()),
                    Formula::eq(p1.right_term(), p2.right_term())),
      Formula::implies(p1, rebuild_atom(p1.kind(), p2.left_term(), p2.right_term()))));
  return expect == g;
}

std::optional<int> logical_axiom_core(const Formula& g) {
  // 3: x = x for a variable x
  if (g.kind() == FK::Eq && is_var(g.left_term()) && g.left_term() == g.right_term()) return 3;
  if (g.kind() != FK::Or) return std::nullopt;
  // 1: A \/ ~A
  if (g.right().kind() == FK::Not && syntax::alpha_equal(g.sub(), g.right().sub())) return 1;
  // 2: A(a) -> exists x A(x), x free in A
  if (g.sub().kind() == FK::Not && g.right().kind() == FK::Exists) {
    VarId x = g.right().bound();
    const Formula& a = g.right().sub();
    if (syntax::occurs_free(x, a)) {
      std::map<VarId, Term> b;
      if (syntax::match_formula(a, g.sub().sub(), {x}, b)) return 2;
    }
  }
  if (function_congruence(g)) return 4;
  if (predicate_congruence(g)) return 5;
  return std::nullopt;
}

struct NamedPattern {
  std::string name;
  Formula pattern;  // core form, open in x0, x1
};

std::vector<NamedPattern> peano_patterns(bool with_times) {
  std::vector<std::pair<std::string, std::string>> src = {
      {"P1", "~(S(x0) = 0)"},
      {"P2", "S(x0) = S(x1) -> x0 = x1"},
      {"P3", "x0 + 0 = x0"},
      {"P4", "x0 + S(x1) = S(x0 + x1)"},
      {"P5", "x0 * 0 = 0"},
      {"P6", "x0 * S(x1) = x0 * x1 + x0"},
      {"P7", "~(x0 < 0)"},
      {"P8", "x0 < S(x1) <-> x0 < x1 \\/ x0 = x1"},
  };
  std::vector<NamedPattern> out;
  for (auto& [name, text] : src) {
    if (!with_times && (name == "P5" || name == "P6")) continue;
    out.push_back({name, core(syntax::parse_formula(text))});
  }
  return out;
}

// (A(0) /\ forall y (A(y) -> A(S(y)))) -> forall x A(x), x free in A.
bool induction_instance(const Formula& g) {
  if (g.kind() != FK::Or || g.sub().kind() != FK::Not) return false;
  VarId x;
  const Formula* a = universal_body(g.right(), &x);
  if (!a || !syntax::occurs_free(x, *a)) return false;
  auto fv = syntax::free_vars(*a);
  fv.insert(x);
  VarId y{0};
  while (fv.count(y)) ++y.index;
  Formula step = Formula::forall(
      y, Formula::implies(syntax::substitute(*a, x, Term::var(y)),
                          syntax::substitute(*a, x, Term::succ(Term::var(y)))));
  Formula expect = core(Formula::implies(
      Formula::conj(syntax::substitute(*a, x, Term::zero()), step), Formula::forall(x, *a)));
  return syntax::alpha_equal(expect, g);
}

std::optional<std::string> arithmetic_axiom(const std::vector<NamedPattern>& patterns,
                                            const Formula& g) {
  const std::set<VarId> pvars{VarId{0}, VarId{1}};
  const Formula* level = &g;
  while (level) {
    for (const auto& p : patterns) {
      std::map<VarId, Term> b;
      if (syntax::match_formula(p.pattern, *level, pvars, b)) return p.name;
    }
    if (induction_instance(*level)) return std::string("P9");
    level = universal_body(*level);
  }
  return std::nullopt;
}

// exists z forall x (x in z <-> x in y /\ A), x, y, z distinct, z not free in A.
bool comprehension_instance(const Formula& g) {
  if (g.kind() != FK::Exists) return false;
  VarId z = g.bound(), x;
  const Formula* b = universal_body(g.sub(), &x);
  if (!b) return false;
  // core(P <-> Q) = ~(~(~P \/ Q) \/ ~(~Q \/ P))
  if (b->kind() != FK::Not || b->sub().kind() != FK::Or) return false;
  const Formula& first = b->sub().sub();
  if (first.kind() != FK::Not || first.sub().kind() != FK::Or) return false;
  const Formula& q = first.sub().right();
  // core(x in y /\ A) = ~(~(x in y) \/ ~A)
  if (q.kind() != FK::Not || q.sub().kind() != FK::Or) return false;
  const Formula& mem = q.sub().sub();
  const Formula& nota = q.sub().right();
  if (mem.kind() != FK::Not || mem.sub().kind() != FK::Mem || nota.kind() != FK::Not) return false;
  const Term& yt = mem.sub().right_term();
  if (!is_var(yt)) return false;
  VarId y = yt.var_id();
  const Formula& a = nota.sub();
  if (x == y || y == z || x == z || syntax::occurs_free(z, a)) return false;
  Formula expect = core(Formula::exists(
      z, Formula::forall(x, Formula::iff(Formula::mem(Term::var(x), Term::var(z)),
                                         Formula::conj(Formula::mem(Term::var(x), Term::var(y)), a)))));
  return expect == g;
}

std::optional<std::string> zf_axiom(const Formula& g) {
  static const std::vector<NamedPattern> patterns = [] {
    auto set = syntax::Signature::set_theory;
    return std::vector<NamedPattern>{
        {"extensionality",
         core(syntax::parse_formula("(forall x2. (x2 in x0 <-> x2 in x1)) -> x0 = x1", set))},
        {"regularity",
         core(syntax::parse_formula(
             "(exists x1. x1 in x0) -> exists x1. (x1 in x0 /\\ ~(exists x2. (x2 in x0 /\\ x2 in x1)))",
             set))},
    };
  }();
  const std::set<VarId> pvars{VarId{0}, VarId{1}};
  const Formula* level = &g;
  while (level) {
    for (const auto& p : patterns) {
      std::map<VarId, Term> b;
      if (syntax::match_formula(p.pattern, *level, pvars, b)) return p.name;
    }
    if (comprehension_instance(*level)) return std::string("comprehension");
    level = universal_body(*level);
  }
  return std::nullopt;
}

// Justification of core line g from earlier core lines, or nullopt.
std::optional<std::string> justify_rule(const std::vector<Formula>& prior, const Formula& g) {
  const std::size_t n = prior.size();
  auto at = [](std::size_t i) { return std::to_string(i); };
  // Rule 1: from A infer B \/ A.
  if (g.kind() == FK::Or) {
    for (std::size_t j = 0; j < n; ++j)
      if (syntax::alpha_equal(prior[j], g.right())) return "rule 1 from " + at(j);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Formula& p = prior[j];
    if (p.kind() != FK::Or) continue;
    // Rule 2: from A \/ A infer A.
    if (syntax::alpha_equal(p.sub(), p.right()) && syntax::alpha_equal(p.sub(), g))
      return "rule 2 from " + at(j);
    // Rule 3: from (A \/ B) \/ C infer A \/ (B \/ C).
    if (p.sub().kind() == FK::Or && g.kind() == FK::Or && g.right().kind() == FK::Or &&
        syntax::alpha_equal(p.sub().sub(), g.sub()) &&
        syntax::alpha_equal(p.sub().right(), g.right().sub()) &&
        syntax::alpha_equal(p.right(), g.right().right()))
      return "rule 3 from " + at(j);
  }
  // Rule 4: from A \/ B and ~A \/ C infer B \/ C.
  if (g.kind() == FK::Or) {
    for (std::size_t j = 0; j < n; ++j) {
      const Formula& p = prior[j];
      if (p.kind() != FK::Or || !syntax::alpha_equal(p.right(), g.sub())) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const Formula& q = prior[k];
        if (q.kind() == FK::Or && q.sub().kind() == FK::Not &&
            syntax::alpha_equal(q.sub().sub(), p.sub()) && syntax::alpha_equal(q.right(), g.right()))
          return "rule 4 from " + at(j) + ", " + at(k);
      }
    }
  }
  // Rule 5: from A -> B infer (exists x A) -> B, x not free in B.
  if (g.kind() == FK::Or && g.sub().kind() == FK::Not && g.sub().sub().kind() == FK::Exists) {
    VarId x = g.sub().sub().bound();
    const Formula& a = g.sub().sub().sub();
    if (!syntax::occurs_free(x, g.right())) {
      for (std::size_t j = 0; j < n; ++j) {
        const Formula& p = prior[j];
        if (p.kind() == FK::Or && p.sub().kind() == FK::Not &&
            syntax::alpha_equal(p.sub().sub(), a) && syntax::alpha_equal(p.right(), g.right()))
          return "rule 5 from " + at(j);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> justify(const Theory& t, const std::vector<Formula>& prior,
                                   const Formula& g) {
  if (auto s = logical_axiom_core(g)) return "axiom scheme " + std::to_string(*s);
  if (t.axiom_recognizer) {
    if (auto name = t.axiom_recognizer(g)) return "axiom " + *name;
  }
  return justify_rule(prior, g);
}

}  // namespace

// ---------------------------------------------------------------------------

Theory pure_logic() {
  return {"logic", syntax::Signature::arithmetic, nullptr};
}

Theory peano() {
  auto patterns = std::make_shared<std::vector<NamedPattern>>(peano_patterns(true));
  return {"peano", syntax::Signature::arithmetic,
          [patterns](const Formula& g) { return arithmetic_axiom(*patterns, g); }};
}

Theory presburger() {
  auto patterns = std::make_shared<std::vector<NamedPattern>>(peano_patterns(false));
  return {"presburger", syntax::Signature::additive,
          [patterns](const Formula& g) { return arithmetic_axiom(*patterns, g); }};
}

Theory zf() { return {"zf", syntax::Signature::set_theory, zf_axiom}; }

Theory theory_by_name(std::string_view name) {
  if (name == "logic") return pure_logic();
  if (name == "peano") return peano();
  if (name == "presburger") return presburger();
  if (name == "zf") return zf();
  throw std::invalid_argument("unknown theory '" + std::string(name) +
                              "' (expected logic, peano, presburger or zf)");
}

std::optional<int> is_logical_axiom(const Formula& f) { return logical_axiom_core(core(f)); }

bool is_axiom_of(const Theory& t, const Formula& f) {
  if (!syntax::fits_signature(f, t.signature)) return false;
  Formula g = core(f);
  if (logical_axiom_core(g)) return true;
  return t.axiom_recognizer && t.axiom_recognizer(g).has_value();
}

CheckResult check_derivation(const Theory& t, const std::vector<Formula>& lines) {
  CheckResult r;
  if (lines.empty()) {
    r.reason = "empty derivation";
    return r;
  }
  std::vector<Formula> prior;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!syntax::fits_signature(lines[i], t.signature)) {
      r.line = i;
      r.reason = "formula outside the signature of " + t.name;
      return r;
    }
    Formula g = core(lines[i]);
    auto why = justify(t, prior, g);
    if (!why) {
      r.line = i;
      r.reason = i == 0 ? "not-an-axiom" : "not an axiom and no rule applies";
      return r;
    }
    r.justifications.push_back(*why);
    prior.push_back(g);
  }
  r.valid = true;
  return r;
}

bool dem(const GodelCode& d, const GodelCode& a, const Theory& t) {
  try {
    auto lines = godel::decode_proof(d);
    if (!check_derivation(t, lines).valid) return false;
    return godel::encode_formula(lines.back()) == a;
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Enumeration by proof code

namespace {

double log2_natural(const Natural& n) {
  if (n <= 0) return -std::numeric_limits<double>::infinity();
  std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) return std::log2(static_cast<double>(n));
  Natural top = n >> (bits - 64);
  return std::log2(static_cast<double>(top)) + static_cast<double>(bits - 64);
}

double log2_code(const GodelCode& c) {
  if (c.is_materialized()) return log2_natural(c.value());
  double s = 0;
  const auto& comps = c.symbolic_components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!comps[i].is_materialized()) return std::numeric_limits<double>::infinity();
    s += (static_cast<double>(comps[i].value()) + 1) * std::log2(double(godel::prime(i + 1)));
  }
  return s;
}

constexpr double kSlack = 1e-9;

bool within(double x, double bound) { return x <= bound + kSlack * std::max(1.0, std::abs(bound)); }

struct PoolEntry {
  Formula formula;
  Formula core;
  Natural code;
  double code_d;
  bool axiom;
};

// All well-formed formulas of the signature whose code has log2 <= max_log.
class PoolBuilder {
 public:
  PoolBuilder(const Theory& t, double max_log, std::size_t limit)
      : t_(t), max_log_(max_log), limit_(limit) {
    using K = syntax::Symbol::Kind;
    auto sig = t.signature;
    term_syms_ = {K::Zero, K::Succ, K::Plus};
    if (sig == syntax::Signature::arithmetic) term_syms_.push_back(K::Times);
    if (sig == syntax::Signature::set_theory) term_syms_.clear();
    form_syms_ = {K::Eq};
    if (sig != syntax::Signature::set_theory) form_syms_.push_back(K::Lt);
    for (K k : {K::Not, K::Or, K::And, K::Implies, K::Exists, K::Forall}) form_syms_.push_back(k);
  }

  std::vector<PoolEntry> build() {
    slots_ = {'F'};
    dfs(0, 0.0);
    std::sort(out_.begin(), out_.end(),
              [](const PoolEntry& a, const PoolEntry& b) { return a.code < b.code; });
    return std::move(out_);
  }

 private:
  static double weight(const Natural& code, std::size_t pos) {
    return (static_cast<double>(code) + 1) * std::log2(double(godel::prime(pos + 1)));
  }
  static double min_weight(char slot) { return slot == 'F' ? 10 : slot == 'T' ? 2 : 26; }

  void dfs(std::size_t pos, double w) {
    if (slots_.empty()) {
      emit();
      return;
    }
    double lb = w;
    for (std::size_t j = 0; j < slots_.size(); ++j)
      lb += min_weight(slots_[slots_.size() - 1 - j]) * std::log2(double(godel::prime(pos + j + 1)));
    if (!within(lb, max_log_)) return;
    char slot = slots_.back();
    slots_.pop_back();
    using K = syntax::Symbol::Kind;
    auto try_symbol = [&](syntax::Symbol s, std::initializer_list<char> children) {
      double nw = w + weight(godel::symbol_code(s), pos);
      if (!within(nw, max_log_)) return false;
      std::size_t saved = slots_.size();
      for (auto it = std::rbegin(children); it != std::rend(children); ++it) slots_.push_back(*it);
      symbols_.push_back(s);
      dfs(pos + 1, nw);
      symbols_.pop_back();
      slots_.resize(saved);
      return true;
    };
    auto try_vars = [&] {
      for (unsigned n = 0;; ++n)
        if (!try_symbol({K::Var, n}, {})) break;
    };
    if (slot == 'V') {
      try_vars();
    } else if (slot == 'T') {
      for (K k : term_syms_) {
        if (k == K::Zero) try_symbol({k}, {});
        else if (k == K::Succ) try_symbol({k}, {'T'});
        else try_symbol({k}, {'T', 'T'});
      }
      try_vars();
    } else {
      for (K k : form_syms_) {
        switch (k) {
          case K::Eq:
          case K::Lt: try_symbol({k}, {'T', 'T'}); break;
          case K::Not: try_symbol({k}, {'F'}); break;
          case K::Exists:
          case K::Forall: try_symbol({k}, {'V', 'F'}); break;
          default: try_symbol({k}, {'F', 'F'}); break;
        }
      }
    }
    slots_.push_back(slot);
  }

  void emit() {
    if (out_.size() >= limit_)
      throw SearchLimitExceeded("candidate formula pool exceeds " + std::to_string(limit_));
    Formula f = syntax::parse_polish(symbols_);
    GodelCode c = godel::encode_formula(f);
    if (!c.is_materialized()) return;
    Formula g = core(f);
    bool axiom = logical_axiom_core(g) || (t_.axiom_recognizer && t_.axiom_recognizer(g));
    out_.push_back({f, g, c.value(), static_cast<double>(c.value()), axiom});
  }

  const Theory& t_;
  double max_log_;
  std::size_t limit_;
  std::vector<syntax::Symbol::Kind> term_syms_, form_syms_;
  std::vector<char> slots_;
  std::vector<syntax::Symbol> symbols_;
  std::vector<PoolEntry> out_;
};

class ProofSearch {
 public:
  ProofSearch(const std::vector<PoolEntry>& pool, const EnumerationLimits& lim)
      : pool_(pool), lim_(lim) {}

  // Visits every valid proof whose log2 code is within the bound returned
  // by `bound()`; `visit` sees each such proof's pool indices.
  template <class Bound, class Visit, class Prune>
  void run(Bound bound, Visit visit, Prune prune) {
    lines_.clear();
    cores_.clear();
    dfs(0.0, bound, visit, prune);
  }

 private:
  template <class Bound, class Visit, class Prune>
  void dfs(double used, Bound& bound, Visit& visit, Prune& prune) {
    std::size_t k = lines_.size();
    double lp = std::log2(double(godel::prime(k + 1)));
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      const PoolEntry& e = pool_[i];
      double w = used + (e.code_d + 1) * lp;
      if (!within(w, bound())) break;  // pool is sorted by code
      if (++nodes_ > lim_.max_nodes)
        throw SearchLimitExceeded("proof search visited more than " +
                                  std::to_string(lim_.max_nodes) + " prefixes");
      if (!e.axiom && !justify_rules(e.core)) continue;
      lines_.push_back(i);
      cores_.push_back(e.core);
      visit(lines_, w);
      if (!prune(lines_.size(), w)) dfs(w, bound, visit, prune);
      lines_.pop_back();
      cores_.pop_back();
    }
  }

  bool justify_rules(const Formula& g) { return justify_rule(cores_, g).has_value(); }

  const std::vector<PoolEntry>& pool_;
  EnumerationLimits lim_;
  std::vector<std::size_t> lines_;
  std::vector<Formula> cores_;
  std::size_t nodes_ = 0;
};

GodelCode proof_code(const std::vector<PoolEntry>& pool, const std::vector<std::size_t>& lines) {
  std::vector<GodelCode> comps;
  for (auto i : lines) comps.emplace_back(pool[i].code);
  return GodelCode::sequence(std::move(comps));
}

}  // namespace

std::vector<Theorem> enumerate_theorems(const Theory& t, const GodelCode& budget,
                                        const EnumerationLimits& limits) {
  std::vector<Theorem> out;
  double log_budget = log2_code(budget);
  if (!std::isfinite(log_budget))
    throw SearchLimitExceeded("budget too large to enumerate");
  // The first line's code c satisfies 2^(c+1) <= budget.
  if (log_budget < 1) return out;
  auto pool = PoolBuilder(t, std::log2(log_budget), limits.max_pool).build();
  ProofSearch search(pool, limits);
  search.run([&] { return log_budget; },
             [&](const std::vector<std::size_t>& lines, double) {
               GodelCode d = proof_code(pool, lines);
               if (d <= budget) out.push_back({d, pool[lines.back()].formula});
             },
             [](std::size_t, double) { return false; });
  std::sort(out.begin(), out.end(), [](const Theorem& a, const Theorem& b) { return a.code < b.code; });
  return out;
}

SemiResult semidecide_theorem(const Theory& t, const Formula& f, const GodelCode& budget,
                              const EnumerationLimits& limits) {
  SemiResult none;
  GodelCode target_code;
  try {
    target_code = godel::encode_formula(f);
  } catch (const std::exception&) {
    return none;
  }
  if (!target_code.is_materialized()) return none;
  Formula target = godel::decode_formula(target_code);
  double log_budget = log2_code(budget);
  double tc = static_cast<double>(target_code.value());

  // A one-line proof is the least proof of its formula.
  if (check_derivation(t, {target}).valid) {
    GodelCode d = godel::encode_proof({target});
    if (d <= budget) return {true, d};
    return none;
  }
  // Otherwise the target sits at position >= 2, after a line of code c:
  // (c + 1) + (tc + 1) * log2 3 <= log2 budget.
  double room = log_budget - (tc + 1) * std::log2(3.0);
  if (!std::isfinite(log_budget) || room < 1) return none;
  try {
    auto pool = PoolBuilder(t, std::log2(room), limits.max_pool).build();
    std::optional<GodelCode> best;
    double best_log = log_budget;
    ProofSearch search(pool, limits);
    search.run([&] { return best_log; },
               [&](const std::vector<std::size_t>& lines, double w) {
                 if (!(pool[lines.back()].code == target_code.value())) return;
                 GodelCode d = proof_code(pool, lines);
                 if (d <= budget && (!best || d < *best)) {
                   best = d;
                   best_log = std::min(best_log, w);
                 }
               },
               [&](std::size_t k, double w) {
                 // Any extension ending in the target costs at least this much.
                 double more = w + (tc + 1) * std::log2(double(godel::prime(k + 1)));
                 return !within(more, best_log);
               });
    if (best) return {true, *best};
  } catch (const SearchLimitExceeded&) {
  }
  return none;
}

std::vector<Formula> parse_derivation(std::string_view text, syntax::Signature sig) {
  std::vector<Formula> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(syntax::parse_formula(line, sig));
    } catch (const syntax::ParseError& e) {
      throw syntax::ParseError(e.position(), "line " + std::to_string(lineno) + ": " + e.message());
    }
  }
  return out;
}

}  // namespace metawb::hilbert
