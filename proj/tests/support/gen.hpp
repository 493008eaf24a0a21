#pragma once

// Hand-rolled random generators shared by the unit tests and the
// acceptance runner. Everything is seeded, so failures replay.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "metawb/ordinals.hpp"
#include "metawb/recfun.hpp"
#include "metawb/syntax.hpp"

#ifndef METAWB_CORPUS_DIR
#define METAWB_CORPUS_DIR "tests/corpus"
#endif

namespace gen {

using metawb::syntax::Formula;
using metawb::syntax::Signature;
using metawb::syntax::Term;
using metawb::syntax::VarId;

inline std::string corpus(const std::string& rel) { return std::string(METAWB_CORPUS_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, n).
  unsigned below(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(eng_); }
  bool coin() { return below(2) == 1; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Term term(Rng& r, int depth, unsigned vars, Signature sig = Signature::arithmetic) {
  unsigned pick = depth <= 0 ? r.below(2) : r.below(sig == Signature::arithmetic ? 5 : 4);
  switch (pick) {
    case 0: return Term::zero();
    case 1: return vars ? Term::var(r.below(vars)) : Term::zero();
    case 2: return Term::succ(term(r, depth - 1, vars, sig));
    case 3: return Term::plus(term(r, depth - 1, vars, sig), term(r, depth - 1, vars, sig));
    default: return Term::times(term(r, depth - 1, vars, sig), term(r, depth - 1, vars, sig));
  }
}

// Any connective, variables below `vars` (quantifiers may bind them).
inline Formula formula(Rng& r, int depth, unsigned vars, bool core_only = false,
                       Signature sig = Signature::arithmetic) {
  if (depth <= 0 || r.below(5) == 0) {
    auto a = term(r, 2, vars, sig), b = term(r, 2, vars, sig);
    return r.coin() ? Formula::eq(a, b) : Formula::lt(a, b);
  }
  unsigned pick = core_only ? r.below(3) : r.below(9);
  auto sub = [&] { return formula(r, depth - 1, vars, core_only, sig); };
  VarId v{vars ? r.below(vars) : 0};
  switch (pick) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::disj(sub(), sub());
    case 2: return Formula::exists(v, sub());
    case 3: return Formula::conj(sub(), sub());
    case 4: return Formula::implies(sub(), sub());
    case 5: return Formula::forall(v, sub());
    case 6: return Formula::iff(sub(), sub());
    default: return Formula::negation(sub());
  }
}

// Linear term: each variable repeated up to max_coef times, plus up to
// max_coef successors.
inline Term linear(Rng& r, const std::vector<unsigned>& vs, unsigned max_coef) {
  Term t = Term::zero();
  bool any = false;
  for (unsigned v : vs) {
    unsigned c = r.below(max_coef + 1);
    for (unsigned i = 0; i < c; ++i) {
      t = any ? Term::plus(t, Term::var(v)) : Term::var(v);
      any = true;
    }
  }
  unsigned k = r.below(max_coef + 1);
  for (unsigned i = 0; i < k; ++i) t = Term::succ(t);
  return t;
}

namespace detail {
inline Formula additive_body(Rng& r, std::vector<unsigned> vs, int depth, unsigned max_quant, unsigned max_coef) {
  unsigned pick = r.below(depth > 0 ? 6 : 2);
  if (pick <= 1) {
    auto a = linear(r, vs, max_coef), b = linear(r, vs, max_coef);
    return pick == 0 ? Formula::eq(a, b) : Formula::lt(a, b);
  }
  if (pick == 2) return Formula::negation(additive_body(r, vs, depth - 1, max_quant, max_coef));
  if (pick == 3 || vs.size() >= max_quant) {
    auto a = additive_body(r, vs, depth - 1, max_quant, max_coef);
    auto b = additive_body(r, vs, depth - 1, max_quant, max_coef);
    return r.coin() ? Formula::conj(a, b) : Formula::disj(a, b);
  }
  unsigned v = static_cast<unsigned>(vs.size());
  vs.push_back(v);
  auto body = additive_body(r, vs, depth - 1, max_quant, max_coef);
  return r.coin() ? Formula::exists(VarId{v}, body) : Formula::forall(VarId{v}, body);
}
}  // namespace detail

// Closed additive sentence with at most max_quant nested quantifiers and
// coefficients up to max_coef.
inline Formula additive_sentence(Rng& r, unsigned max_quant = 3, unsigned max_coef = 5, int depth = 4) {
  auto body = detail::additive_body(r, {0}, depth, max_quant, max_coef);
  return r.coin() ? Formula::exists(VarId{0}, body) : Formula::forall(VarId{0}, body);
}

namespace detail {
inline Formula bounded_body(Rng& r, std::vector<unsigned> vs, int depth) {
  unsigned pick = r.below(depth > 0 ? 6 : 2);
  if (pick <= 1 || (pick >= 4 && vs.size() >= 3)) {
    auto a = linear(r, vs, 3), b = linear(r, vs, 3);
    return pick == 0 ? Formula::eq(a, b) : Formula::lt(a, b);
  }
  if (pick == 2) return Formula::negation(bounded_body(r, vs, depth - 1));
  if (pick == 3) {
    auto a = bounded_body(r, vs, depth - 1), b = bounded_body(r, vs, depth - 1);
    return r.coin() ? Formula::conj(a, b) : Formula::disj(a, b);
  }
  unsigned v = static_cast<unsigned>(vs.size());
  unsigned c = 1 + r.below(6);
  vs.push_back(v);
  auto body = bounded_body(r, vs, depth - 1);
  auto guard = Formula::lt(Term::var(v), Term::numeral(c));
  return r.coin() ? Formula::exists(VarId{v}, Formula::conj(guard, body))
                  : Formula::forall(VarId{v}, Formula::implies(guard, body));
}
}  // namespace detail

// Every quantifier is guarded by x < c with c <= 8, so ranging each
// variable over 0..8 decides the sentence.
inline Formula bounded_sentence(Rng& r) {
  auto body = detail::bounded_body(r, {0}, 4);
  auto guard = Formula::lt(Term::var(0), Term::numeral(1 + r.below(8)));
  return r.coin() ? Formula::exists(VarId{0}, Formula::conj(guard, body))
                  : Formula::forall(VarId{0}, Formula::implies(guard, body));
}

// Ordinal with nesting depth <= depth and small coefficients.
inline metawb::ordinals::Ord ordinal(Rng& r, int depth, unsigned max_terms = 3, unsigned max_coef = 3) {
  using metawb::ordinals::Ord;
  using metawb::ordinals::OrdTerm;
  if (depth <= 0) return Ord::natural(r.below(max_coef + 1));
  std::vector<Ord> exps;
  unsigned n = r.below(max_terms + 1);
  for (unsigned i = 0; i < n; ++i) exps.push_back(ordinal(r, depth - 1, max_terms, max_coef));
  std::sort(exps.begin(), exps.end(), [](const Ord& a, const Ord& b) { return b < a; });
  std::vector<OrdTerm> terms;
  for (const auto& e : exps) {
    if (!terms.empty() && terms.back().exponent == e) continue;
    terms.push_back({e, 1 + r.below(max_coef)});
  }
  return Ord::from_terms(std::move(terms));
}

inline metawb::ordinals::Ord limit_ordinal(Rng& r, int depth) {
  for (;;) {
    auto o = ordinal(r, depth);
    if (o.is_limit()) return o;
  }
}

// Total expression of the given arity built from projections, +, × and 1_<.
inline metawb::recfun::RecExpr total_expr(Rng& r, std::size_t arity, int depth) {
  using metawb::recfun::RecExpr;
  if (depth <= 0 || r.below(3) == 0) return RecExpr::proj(arity, 1 + r.below(static_cast<unsigned>(arity)));
  RecExpr head = r.below(3) == 0 ? RecExpr::plus() : r.coin() ? RecExpr::less() : RecExpr::times();
  return RecExpr::comp(head, {total_expr(r, arity, depth - 1), total_expr(r, arity, depth - 1)});
}

// μ over a total body of arity n + 1 that tends to hit zero: 1_<(h1, h2)
// is zero once h1 catches up with h2.
inline metawb::recfun::RecExpr mu_expr(Rng& r, std::size_t n) {
  using metawb::recfun::RecExpr;
  RecExpr body = r.coin() ? RecExpr::comp(RecExpr::less(), {total_expr(r, n + 1, 2), total_expr(r, n + 1, 2)})
                          : total_expr(r, n + 1, 3);
  return RecExpr::mu(body);
}

// Direct evaluation over 0..range-1 for every quantifier; exact for the
// guarded sentences above when range exceeds every guard.
namespace oracle {
inline unsigned long long value(const Term& t, const std::vector<unsigned long long>& env) {
  switch (t.kind()) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::Var: return env.at(t.var_id().index);
    case Term::Kind::Succ: return value(t.lhs(), env) + 1;
    case Term::Kind::Plus: return value(t.lhs(), env) + value(t.rhs(), env);
    case Term::Kind::Times: return value(t.lhs(), env) * value(t.rhs(), env);
  }
  return 0;
}

inline bool holds(const Formula& f, std::vector<unsigned long long>& env, unsigned range) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Eq: return value(f.left_term(), env) == value(f.right_term(), env);
    case K::Lt: return value(f.left_term(), env) < value(f.right_term(), env);
    case K::Not: return !holds(f.sub(), env, range);
    case K::Or: return holds(f.sub(), env, range) || holds(f.right(), env, range);
    case K::And: return holds(f.sub(), env, range) && holds(f.right(), env, range);
    case K::Implies: return !holds(f.sub(), env, range) || holds(f.right(), env, range);
    case K::Iff: return holds(f.sub(), env, range) == holds(f.right(), env, range);
    case K::Exists:
    case K::Forall: {
      unsigned v = f.bound().index;
      if (env.size() <= v) env.resize(v + 1, 0);
      auto saved = env[v];
      bool want = f.kind() == K::Exists;
      bool result = !want;
      for (unsigned x = 0; x < range && result != want; ++x) {
        env[v] = x;
        if (holds(f.sub(), env, range) == want) result = want;
      }
      env[v] = saved;
      return result;
    }
    case K::Mem: break;
  }
  throw std::invalid_argument("oracle: membership");
}

inline bool holds(const Formula& f, unsigned range) {
  std::vector<unsigned long long> env(8, 0);
  return holds(f, env, range);
}

// Unmetered recursive-function interpreter on machine words; μ scans up
// to `cap` and gives up beyond it.
inline std::optional<std::uint64_t> run(const metawb::recfun::RecExpr& e, const std::vector<std::uint64_t>& a,
                                        std::uint64_t cap = 200'000) {
  using K = metawb::recfun::RecExpr::Kind;
  switch (e.kind()) {
    case K::Proj: return a[e.proj_index() - 1];
    case K::Plus: return a[0] + a[1];
    case K::Times: return a[0] * a[1];
    case K::Less: return a[0] < a[1] ? 1 : 0;
    case K::Comp: {
      std::vector<std::uint64_t> inner;
      for (const auto& h : e.hs()) {
        auto v = run(h, a, cap);
        if (!v) return std::nullopt;
        inner.push_back(*v);
      }
      return run(e.g(), inner, cap);
    }
    case K::Mu:
      for (std::uint64_t m = 0; m <= cap; ++m) {
        std::vector<std::uint64_t> inner{m};
        inner.insert(inner.end(), a.begin(), a.end());
        auto v = run(e.g(), inner, cap);
        if (!v) return std::nullopt;
        if (*v == 0) return m;
      }
      return std::nullopt;
  }
  return std::nullopt;
}
}  // namespace oracle

}  // namespace gen
