#include <doctest.h>

#include "../support/gen.hpp"
#include "../support/walk.hpp"
#include "metawb/ordinals.hpp"

using namespace metawb;
using namespace metawb::ordinals;

namespace {
Ord O(const char* s) { return parse_ord(s); }
Ord one() { return Ord::natural(1); }
}  // namespace

TEST_CASE("normal forms of exponential polynomials") {
  auto X = ExpPoly::x();
  CHECK(normalize(X) == Ord::omega());
  CHECK(normalize(ExpPoly::sum(X, X)) == O("w*2"));
  CHECK(normalize(ExpPoly::sum(ExpPoly::zero(), X)) == Ord::omega());
  CHECK(normalize(ExpPoly::sum(X, ExpPoly::zero())) == Ord::omega());
  CHECK(normalize(ExpPoly::xpow(ExpPoly::zero())) == one());
  CHECK(normalize(ExpPoly::xpow(X)) == Ord::omega_pow(Ord::omega()));
  // 1 + ω is absorbed.
  CHECK(normalize(ExpPoly::sum(ExpPoly::xpow(ExpPoly::zero()), X)) == Ord::omega());
}

TEST_CASE("comparison and addition examples") {
  auto w = Ord::omega();
  CHECK(compare(w, add(w, one())) == std::strong_ordering::less);
  CHECK(compare(w, w) == std::strong_ordering::equal);
  CHECK(add(one(), w) == w);
  CHECK(add(w, one()) == O("w + 1"));
  CHECK(to_string(add(w, one())) == "w^(1)*1 + 1");
  CHECK(add(w, Ord()) == w);
  CHECK(add(Ord(), w) == w);
  CHECK(add(O("w*2 + 5"), O("w^(2)")) == O("w^(2)"));
  CHECK(add(O("w^(2) + w + 5"), O("w*3 + 1")) == O("w^(2) + w*4 + 1"));
}

TEST_CASE("text form") {
  CHECK(to_string(Ord()) == "0");
  CHECK(to_string(Ord::omega()) == "w");
  auto a = O("w^(w)*1 + w^(1)*2 + 3");
  CHECK(to_string(a) == "w^(w)*1 + w^(1)*2 + 3");
  CHECK_THROWS_AS(O("w^(1"), std::invalid_argument);
  CHECK_THROWS_AS(O("w +"), std::invalid_argument);
  gen::Rng r(71);
  for (int i = 0; i < 1000; ++i) {
    auto o = gen::ordinal(r, 3);
    CHECK(parse_ord(to_string(o)) == o);
  }
}

TEST_CASE("construction rejects malformed term lists") {
  CHECK_THROWS_AS(Ord::from_terms({{Ord(), 1}, {Ord::omega(), 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Ord::from_terms({{Ord::omega(), 0}}), std::invalid_argument);
}

TEST_CASE("fundamental sequences") {
  auto w = Ord::omega();
  for (unsigned n = 0; n < 6; ++n) {
    CHECK(fundamental_sequence(w, n) == Ord::natural(n));
    CHECK(fundamental_sequence(O("w*2"), n) == add(w, Ord::natural(n)));
    CHECK(fundamental_sequence(Ord::omega_pow(w), n) == Ord::omega_pow(Ord::natural(n)));
  }
  CHECK_THROWS_AS(fundamental_sequence(O("w + 1"), 0), std::invalid_argument);
  CHECK_THROWS_AS(fundamental_sequence(Ord(), 0), std::invalid_argument);
  gen::Rng r(72);
  for (int i = 0; i < 300; ++i) {
    auto l = gen::limit_ordinal(r, 3);
    for (unsigned n = 0; n < 10; ++n) {
      CHECK(fundamental_sequence(l, n) < l);
      CHECK(fundamental_sequence(l, n) < fundamental_sequence(l, n + 1));
    }
  }
}

TEST_CASE("two_pow: base, derived values, closed form") {
  auto w = Ord::omega();
  CHECK(two_pow(Ord()) == one());
  CHECK(two_pow(w) == w);
  CHECK(two_pow(add(w, one())) == O("w*2"));
  CHECK(two_pow(Ord::natural(10)) == Ord::natural(1024));
  CHECK(two_pow(O("w*2")) == Ord::omega_pow(Ord::natural(2)));
  CHECK(two_pow(Ord::omega_pow(Ord::natural(2))) == Ord::omega_pow(w));
  // An infinite successor exponent keeps its one: 1 + (w + 1) = w + 1.
  CHECK(two_pow(Ord::omega_pow(O("w + 1"))) == Ord::omega_pow(Ord::omega_pow(O("w + 1"))));
  CHECK(two_pow(Ord::omega_pow(w)) < two_pow(Ord::omega_pow(O("w + 1"))));
  // Just below the fixed point the tower keeps climbing.
  auto tower = w;
  for (int i = 0; i < 4; ++i) {
    auto next = two_pow(tower);
    if (i > 0) CHECK(tower < next);
    tower = Ord::omega_pow(tower);
  }
}

TEST_CASE("compare is a total order") {
  gen::Rng r(73);
  for (int i = 0; i < 2000; ++i) {
    auto a = gen::ordinal(r, 3), b = gen::ordinal(r, 3), c = gen::ordinal(r, 3);
    CHECK(compare(a, a) == std::strong_ordering::equal);
    CHECK((a < b) + (a == b) + (b < a) == 1);
    if (a < b && b < c) CHECK(a < c);
    if (a <= b && b <= a) CHECK(a == b);
  }
}

TEST_CASE("compare matches the eventual order of the polynomials") {
  gen::Rng r(74);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen::ordinal(r, 2), b = gen::ordinal(r, 2);
    auto expect = compare(a, b);
    // Coefficients stay below 4, so base m >= 4 already separates.
    for (unsigned m = 4; m <= 12; ++m) {
      auto pa = evaluate_at(a, m), pb = evaluate_at(b, m);
      auto got = pa < pb ? std::strong_ordering::less : pa == pb ? std::strong_ordering::equal : std::strong_ordering::greater;
      CHECK(got == expect);
    }
  }
}

TEST_CASE("successor clause: 2^(a+1) = 2^a + 2^a") {
  gen::Rng r(75);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen::ordinal(r, 3);
    auto p = two_pow(a);
    CHECK(two_pow(add(a, one())) == add(p, p));
  }
}

TEST_CASE("limit clause through fundamental sequences") {
  gen::Rng r(76);
  for (int i = 0; i < 200; ++i) {
    auto l = gen::limit_ordinal(r, 3);
    auto top = two_pow(l);
    Ord prev;
    for (unsigned n = 0; n <= 30; ++n) {
      auto v = two_pow(fundamental_sequence(l, n));
      CHECK(v < top);
      if (n > 0) CHECK(prev <= v);
      prev = v;
    }
  }
}

TEST_CASE("two_pow is strictly monotone") {
  gen::Rng r(77);
  for (int i = 0; i < 2000; ++i) {
    auto a = gen::ordinal(r, 3), b = gen::ordinal(r, 3);
    if (a < b) CHECK(two_pow(a) < two_pow(b));
    if (b < a) CHECK(two_pow(b) < two_pow(a));
  }
}

TEST_CASE("predecessor") {
  CHECK(predecessor(O("w + 3")) == O("w + 2"));
  CHECK(predecessor(one()) == Ord());
  CHECK_THROWS_AS(predecessor(Ord::omega()), std::invalid_argument);
  CHECK_THROWS_AS(predecessor(Ord()), std::invalid_argument);
}

TEST_CASE("random descents reach zero") {
  gen::Rng r(78);
  for (int i = 0; i < 1000; ++i) {
    auto start = gen::ordinal(r, 3);
    auto res = walk::descend(start, r, 1'000'000);
    CAPTURE(to_string(start));
    CHECK(res.reached_zero);
    CHECK(res.always_below);
  }
}
