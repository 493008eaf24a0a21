#include <doctest.h>

#include "../support/gen.hpp"
#include "metawb/godel.hpp"

using namespace metawb;
using namespace metawb::godel;
using syntax::Symbol;

namespace {
// Independent oracle: trial division, no shared code with the encoder.
Natural oracle_encode(const std::vector<unsigned>& a) {
  Natural code = 1;
  unsigned p = 1;
  for (unsigned e : a) {
    do {
      ++p;
    } while ([&] {
      for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return true;
      return false;
    }());
    for (unsigned i = 0; i <= e; ++i) code *= p;
  }
  return code;
}
}  // namespace

TEST_CASE("symbol table") {
  using K = Symbol::Kind;
  const std::pair<K, unsigned> table[] = {{K::Zero, 1}, {K::Succ, 3},    {K::Plus, 5},     {K::Times, 7},
                                          {K::Eq, 9},   {K::Lt, 11},     {K::Not, 13},     {K::Or, 15},
                                          {K::And, 17}, {K::Implies, 19}, {K::Exists, 21}, {K::Forall, 23}};
  for (auto [k, c] : table) {
    CHECK(symbol_code(Symbol{k, 0}) == c);
    CHECK(symbol_from_code(GodelCode(c)) == Symbol{k, 0});
  }
  CHECK(symbol_code(Symbol{K::Var, 0}) == 25);
  CHECK(symbol_code(Symbol{K::Var, 3}) == 31);
  CHECK(symbol_from_code(GodelCode(27)) == Symbol{K::Var, 1});
  CHECK_THROWS_AS(symbol_from_code(GodelCode(2)), DecodeError);
}

TEST_CASE("sequence coding examples") {
  CHECK(encode_seq(std::vector<Natural>{0}) == GodelCode(2));
  CHECK(encode_seq(std::vector<Natural>{9, 1, 1}) == GodelCode(230400));
  CHECK(encode_seq(std::vector<Natural>{}) == GodelCode(1));
  CHECK(decode_seq_values(GodelCode(230400)) == std::vector<Natural>{9, 1, 1});
  CHECK(decode_seq_values(GodelCode(1)).empty());
  CHECK_THROWS_AS(decode_seq(GodelCode(10)), DecodeError);
  CHECK_THROWS_AS(decode_seq(GodelCode(0)), DecodeError);
}

TEST_CASE("sequence coding agrees with trial-division oracle and round-trips") {
  gen::Rng r(21);
  for (int i = 0; i < 2000; ++i) {
    std::vector<unsigned> a(r.below(9));
    for (auto& x : a) x = r.below(51);
    std::vector<Natural> n(a.begin(), a.end());
    auto c = encode_seq(n);
    CHECK(c == GodelCode(oracle_encode(a)));
    CHECK(decode_seq_values(c) == n);
  }
}

TEST_CASE("decode rejects exactly the gapped supports") {
  // 2^a 3^b 5^c 7^d for small exponents; gapless iff the nonzero
  // exponents form a prefix.
  for (unsigned mask = 0; mask < 16; ++mask) {
    Natural c = 1;
    const unsigned primes[] = {2, 3, 5, 7};
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) c *= primes[i] * primes[i];
    bool gapless = (mask & (mask + 1)) == 0;
    if (gapless)
      CHECK_NOTHROW(decode_seq(GodelCode(c)));
    else
      CHECK_THROWS_AS(decode_seq(GodelCode(c)), DecodeError);
  }
}

TEST_CASE("formula codes") {
  auto eq00 = syntax::parse_formula("0 = 0");
  CHECK(encode_formula(eq00) == GodelCode(230400));
  CHECK(decode_formula(GodelCode(230400)) == eq00);
  CHECK_THROWS_AS(decode_formula(GodelCode(2)), DecodeError);
  CHECK(encode_formula(eq00).to_factored() == "2^10 * 3^2 * 5^2");
}

TEST_CASE("formula coding round-trips and is injective on random formulas") {
  gen::Rng r(22);
  std::map<std::string, std::string> seen;
  for (int i = 0; i < 1000; ++i) {
    auto f = gen::formula(r, 3, 3);
    f = syntax::expand_iff(f);
    auto c = encode_formula(f);
    CHECK(decode_formula(c) == f);
    auto key = c.to_string();
    auto text = syntax::to_string(f);
    auto [it, fresh] = seen.emplace(key, text);
    if (!fresh) CHECK(it->second == text);
  }
}

TEST_CASE("proof codes") {
  auto eq00 = syntax::parse_formula("0 = 0");
  auto d = encode_proof({eq00});
  CHECK_FALSE(d.is_materialized());
  CHECK(d.to_factored() == "2^230401");
  CHECK(d == encode_seq(std::vector<GodelCode>{GodelCode(230400)}));
  CHECK(decode_proof(d) == std::vector<syntax::Formula>{eq00});
  CHECK_THROWS_AS(decode_proof(GodelCode(6)), DecodeError);
  CHECK_THROWS_AS(encode_proof({}), std::invalid_argument);
  CHECK(GodelCode::parse(d.to_factored()) == d);
}

TEST_CASE("numeric order on codes") {
  auto small = GodelCode(230400);
  auto big = encode_proof({syntax::parse_formula("0 = 0")});
  CHECK(small < big);
  CHECK(encode_proof({syntax::parse_formula("0 = 0")}) < encode_proof({syntax::parse_formula("x0 = x0")}));
}
