#include <doctest.h>

#include <sstream>

#include "../support/gen.hpp"
#include "metawb/hilbert.hpp"
#include "metawb/presburger.hpp"

using namespace metawb;
using namespace metawb::presburger;

namespace {
syntax::Formula P(const char* s) { return syntax::parse_formula(s, syntax::Signature::additive); }
PFormula Q(const char* s) { return from_formula(P(s)); }

syntax::Formula closure(syntax::Formula f) {
  for (auto v : syntax::free_vars(f)) f = syntax::Formula::forall(v, f);
  return f;
}
}  // namespace

TEST_CASE("decision examples") {
  CHECK(decide(P("forall x0. exists x1. (x0 = x1 + x1 \\/ x0 = S(x1 + x1))")));
  CHECK_FALSE(decide(P("exists x0. S(x0) = 0")));
  CHECK(decide(P("forall x0. forall x1. x0 + x1 = x1 + x0")));
  CHECK(decide(P("exists x0. x0 + x0 = S(S(0))")));
  CHECK_FALSE(decide(P("exists x0. x0 + x0 = S(S(S(0)))")));
  CHECK(decide(P("forall x0. x0 < S(x0)")));
  CHECK_FALSE(decide(P("exists x0. x0 < 0")));
  CHECK(decide(P("forall x0. (0 < x0 -> exists x1. x0 = S(x1))")));
  CHECK_THROWS_AS(decide(P("x0 = x0")), std::invalid_argument);
  CHECK_THROWS_AS(decide(syntax::parse_formula("exists x0. x0 * x0 = S(S(0))")), std::invalid_argument);
}

TEST_CASE("quantifier elimination examples") {
  auto q = eliminate_quantifiers(Q("exists x0. x0 + x0 = S(S(0))"));
  CHECK(q.is_quantifier_free());
  CHECK(eval_closed_qfree(q));
  CHECK(eliminate_quantifiers(Q("exists x0. x0 = x0")) == PFormula::truth(true));
  auto open = eliminate_quantifiers(Q("exists x1. x0 = x1 + x1"));
  CHECK(open.is_quantifier_free());
  CHECK(to_string(open).find('|') != std::string::npos);
}

TEST_CASE("closed quantifier-free evaluation") {
  CHECK(eval_closed_qfree(Q("S(0) < S(S(0))")));
  CHECK_FALSE(eval_closed_qfree(Q("0 = S(0)")));
  Atom div{Atom::Kind::Div, 2, Linear{{}, 3}};
  CHECK_FALSE(eval_closed_qfree(PFormula::atom(div)));
  CHECK(eval_closed_qfree(PFormula::negation(PFormula::atom(div))));
  CHECK_THROWS_AS(eval_closed_qfree(Q("x0 = 0")), std::invalid_argument);
  CHECK_THROWS_AS(eval_closed_qfree(Q("exists x0. x0 = 0")), std::invalid_argument);
}

TEST_CASE("quantifier-free input is kept up to normalization") {
  gen::Rng r(61);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    auto f = gen::additive_sentence(r, 2, 3, 2);
    auto matrix = f;
    while (matrix.is_quantifier()) matrix = matrix.sub();
    if (!from_formula(matrix).is_quantifier_free()) continue;
    ++seen;
    auto q = eliminate_quantifiers(from_formula(matrix));
    CHECK(q.is_quantifier_free());
    CHECK(eliminate_quantifiers(q) == q);
    // Same truth at every small assignment.
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b) {
        std::vector<unsigned long long> env{a, b, 0, 0, 0, 0, 0, 0};
        auto inst = matrix;
        inst = syntax::substitute(inst, syntax::VarId{0}, syntax::Term::numeral(a));
        inst = syntax::substitute(inst, syntax::VarId{1}, syntax::Term::numeral(b));
        CHECK(eval_closed_qfree(eliminate_quantifiers(from_formula(inst))) == gen::oracle::holds(matrix, env, 1));
      }
  }
  CHECK(seen > 50);
}

TEST_CASE("a sentence or its negation, never both") {
  gen::Rng r(62);
  for (int i = 0; i < 200; ++i) {
    auto f = gen::additive_sentence(r, 3, 5, 3);
    CAPTURE(syntax::to_string(f));
    CHECK(decide(f) != decide(syntax::Formula::negation(f)));
  }
}

TEST_CASE("bounded sentences agree with exhaustive evaluation") {
  gen::Rng r(63);
  for (int i = 0; i < 100; ++i) {
    auto f = gen::bounded_sentence(r);
    CAPTURE(syntax::to_string(f));
    CHECK(decide(f) == gen::oracle::holds(f, 9));
  }
}

TEST_CASE("elimination is idempotent") {
  gen::Rng r(64);
  for (int i = 0; i < 200; ++i) {
    auto f = gen::additive_sentence(r, 3, 4, 3);
    // Strip the outer quantifier so free variables survive.
    auto q = eliminate_quantifiers(from_formula(f.sub()));
    CHECK(eliminate_quantifiers(q) == q);
  }
}

TEST_CASE("theorems of the Hilbert system are true") {
  std::istringstream in(gen::slurp(gen::corpus("hilbert/MANIFEST")));
  std::string file, theory, verdict;
  int checked = 0;
  while (in >> file) {
    if (file[0] == '#') {
      std::getline(in, file);
      continue;
    }
    in >> theory >> verdict;
    if (verdict != "valid" || theory == "zf") continue;
    auto lines = hilbert::parse_derivation(gen::slurp(gen::corpus("hilbert/" + file)), syntax::Signature::arithmetic);
    for (const auto& l : lines) {
      if (!syntax::fits_signature(l, syntax::Signature::additive)) continue;
      CAPTURE(syntax::to_string(l));
      CHECK(decide(closure(l)));
      ++checked;
    }
  }
  CHECK(checked >= 20);
  for (const auto& t : hilbert::enumerate_theorems(hilbert::presburger(), godel::GodelCode(100'000))) {
    CAPTURE(syntax::to_string(t.formula));
    CHECK(decide(closure(t.formula)));
  }
}
