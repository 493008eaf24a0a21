#include "metawb/godel.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <mutex>
#include <optional>

namespace metawb::godel {

namespace mp = boost::multiprecision;
using syntax::Symbol;

// ---------------------------------------------------------------------------
// Primes

unsigned long prime(std::size_t i) {
  if (i == 0) throw std::out_of_range("primes are indexed from 1");
  static std::mutex mu;
  static std::vector<unsigned long> primes{2, 3};
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() < i) {
    unsigned long c = primes.back() + 2;
    for (;; c += 2) {
      bool is_prime = true;
      for (unsigned long p : primes) {
        if (p * p > c) break;
        if (c % p == 0) {
          is_prime = false;
          break;
        }
      }
      if (is_prime) break;
    }
    primes.push_back(c);
  }
  return primes[i - 1];
}

namespace {

std::size_t bit_length(const Natural& n) { return n == 0 ? 0 : mp::msb(n) + 1; }

// Exponents minus one of a gapless prime-power product, or nullopt.
std::optional<std::vector<Natural>> factor_gapless(const Natural& n, std::string* why = nullptr) {
  if (n == 0) {
    if (why) *why = "0 is not a sequence code";
    return std::nullopt;
  }
  std::vector<Natural> out;
  Natural r = n;
  for (std::size_t i = 1; r > 1; ++i) {
    unsigned long p = prime(i);
    Natural e = 0;
    if (p == 2) {
      unsigned z = mp::lsb(r);
      r >>= z;
      e = z;
    } else {
      Natural q, rem;
      for (;;) {
        mp::divide_qr(r, Natural(p), q, rem);
        if (rem != 0) break;
        r.swap(q);
        ++e;
      }
    }
    if (e == 0) {
      if (why) *why = "gap in prime support at prime " + std::to_string(p);
      return std::nullopt;
    }
    out.push_back(e - 1);
  }
  return out;
}

Natural product_of(const std::vector<GodelCode>& comps) {
  Natural r = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto e = static_cast<unsigned>(comps[i].value() + 1);
    r *= mp::pow(Natural(prime(i + 1)), e);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// GodelCode

GodelCode::GodelCode(Natural n) : rep_(Natural(0)) {
  if (n < 0) throw std::invalid_argument("negative Gödel code");
  if (bit_length(n) > kMaterializeBits) {
    if (auto exps = factor_gapless(n)) {
      std::vector<GodelCode> comps(exps->begin(), exps->end());
      rep_ = Seq{std::move(comps)};
      return;
    }
  }
  rep_ = std::move(n);
}

GodelCode GodelCode::sequence(std::vector<GodelCode> comps) {
  double est = 0;
  bool small = true;
  for (std::size_t i = 0; i < comps.size() && small; ++i) {
    if (!comps[i].is_materialized() || bit_length(comps[i].value()) > 32) {
      small = false;
      break;
    }
    est += static_cast<double>(comps[i].value() + 1) * std::log2(static_cast<double>(prime(i + 1)));
    if (est > kMaterializeBits + 64) small = false;
  }
  if (small) {
    Natural n = product_of(comps);
    if (bit_length(n) <= kMaterializeBits) return GodelCode(std::move(n));
  }
  return GodelCode(Seq{std::move(comps)});
}

const Natural& GodelCode::value() const {
  if (auto* n = std::get_if<Natural>(&rep_)) return *n;
  throw std::domain_error("Gödel code is too large to materialize");
}

const std::vector<GodelCode>& GodelCode::symbolic_components() const {
  static const std::vector<GodelCode> none;
  if (auto* s = std::get_if<Seq>(&rep_)) return s->comps;
  return none;
}

std::string GodelCode::to_decimal() const { return value().str(); }

std::string GodelCode::to_string() const {
  return is_materialized() ? to_decimal() : to_factored();
}

std::string GodelCode::to_factored() const {
  std::string out;
  if (auto* n = std::get_if<Natural>(&rep_)) {
    auto exps = factor_gapless(*n);
    if (!exps) return n->str();
    if (exps->empty()) return "1";
    for (std::size_t i = 0; i < exps->size(); ++i) {
      if (i) out += " * ";
      out += std::to_string(prime(i + 1)) + "^" + Natural((*exps)[i] + 1).str();
    }
    return out;
  }
  const auto& comps = std::get<Seq>(rep_).comps;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out += " * ";
    out += std::to_string(prime(i + 1)) + "^";
    if (comps[i].is_materialized())
      out += Natural(comps[i].value() + 1).str();
    else
      out += "(" + comps[i].to_factored() + " + 1)";
  }
  return out;
}

namespace {

class FactoredParser {
 public:
  explicit FactoredParser(std::string_view s) : s_(s) {}

  GodelCode top() {
    GodelCode c = product();
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return c;
  }

 private:
  struct Exponent {
    std::optional<GodelCode> symbolic;  // code X in (X + k)
    Natural k;                          // the whole exponent when not symbolic
  };

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) const {
    throw DecodeError("bad code at " + std::to_string(pos_) + ": " + m);
  }

  Natural number() {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Natural(std::string(s_.substr(start, pos_ - start)));
  }

  Exponent exponent() {
    if (!accept('(')) return {std::nullopt, number()};
    GodelCode x = product();
    Natural k = 0;
    if (accept('+')) k = number();
    if (!accept(')')) fail("expected ')'");
    if (x.is_materialized()) return {std::nullopt, x.value() + k};
    return {x, k};
  }

  GodelCode product() {
    std::vector<std::pair<Natural, Exponent>> powers;
    do {
      Natural base = number();
      Exponent e{std::nullopt, 1};
      if (accept('^')) e = exponent();
      powers.emplace_back(std::move(base), std::move(e));
    } while (accept('*'));

    double est = 0;
    bool direct = true;
    for (const auto& [base, e] : powers) {
      if (e.symbolic || bit_length(e.k) > 40) {
        direct = false;
        break;
      }
      if (base > 1) est += static_cast<double>(e.k) * static_cast<double>(bit_length(base));
    }
    if (direct && est <= double(1u << 22)) {
      Natural r = 1;
      for (const auto& [base, e] : powers) r *= mp::pow(base, static_cast<unsigned>(e.k));
      return GodelCode(std::move(r));
    }
    // Too large to multiply out: must be a prime-power sequence in order.
    std::vector<GodelCode> comps;
    for (std::size_t i = 0; i < powers.size(); ++i) {
      const auto& [base, e] = powers[i];
      if (base != prime(i + 1)) fail("large codes must list consecutive primes 2, 3, 5, ...");
      if (e.symbolic) {
        if (e.k != 1) fail("symbolic exponents must have the form (code + 1)");
        comps.push_back(*e.symbolic);
      } else {
        if (e.k == 0) fail("zero exponent in sequence code");
        comps.emplace_back(e.k - 1);
      }
    }
    return GodelCode::sequence(std::move(comps));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// RAII holder for an MPFR number.
struct Mp {
  mpfr_t v;
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

void set_natural(Mp& x, const Natural& n, mpfr_rnd_t rnd) {
  std::string hex = n.str(0, std::ios_base::hex);
  mpfr_set_str(x.v, hex.c_str(), 16, rnd);
}

std::size_t max_bits(const GodelCode& c) {
  if (c.is_materialized()) return bit_length(c.value());
  std::size_t m = 0;
  for (const auto& x : c.symbolic_components()) {
    if (!x.is_materialized())
      throw std::domain_error("cannot order codes with nested symbolic exponents");
    m = std::max(m, bit_length(x.value()));
  }
  return m;
}

// Bounds on the natural logarithm of c (c >= 1).
void log_bounds(const GodelCode& c, mpfr_prec_t prec, Mp& lo, Mp& hi) {
  if (c.is_materialized()) {
    Mp x(prec);
    set_natural(x, c.value(), MPFR_RNDD);
    mpfr_log(lo.v, x.v, MPFR_RNDD);
    set_natural(x, c.value(), MPFR_RNDU);
    mpfr_log(hi.v, x.v, MPFR_RNDU);
    return;
  }
  mpfr_set_zero(lo.v, 1);
  mpfr_set_zero(hi.v, 1);
  Mp e(prec), lp(prec), t(prec);
  const auto& comps = c.symbolic_components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    Natural ex = comps[i].value() + 1;
    mpfr_set_ui(t.v, prime(i + 1), MPFR_RNDN);  // exact
    mpfr_log(lp.v, t.v, MPFR_RNDD);
    set_natural(e, ex, MPFR_RNDD);
    mpfr_mul(t.v, e.v, lp.v, MPFR_RNDD);
    mpfr_add(lo.v, lo.v, t.v, MPFR_RNDD);
    mpfr_set_ui(t.v, prime(i + 1), MPFR_RNDN);
    mpfr_log(lp.v, t.v, MPFR_RNDU);
    set_natural(e, ex, MPFR_RNDU);
    mpfr_mul(t.v, e.v, lp.v, MPFR_RNDU);
    mpfr_add(hi.v, hi.v, t.v, MPFR_RNDU);
  }
}

}  // namespace

GodelCode GodelCode::parse(std::string_view text) { return FactoredParser(text).top(); }

bool operator==(const GodelCode& a, const GodelCode& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (auto* n = std::get_if<Natural>(&a.rep_)) return *n == std::get<Natural>(b.rep_);
  return std::get<GodelCode::Seq>(a.rep_).comps == std::get<GodelCode::Seq>(b.rep_).comps;
}

std::strong_ordering operator<=>(const GodelCode& a, const GodelCode& b) {
  if (a.is_materialized() && b.is_materialized()) {
    int c = a.value().compare(b.value());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  if (a == b) return std::strong_ordering::equal;
  if (a.is_materialized() && a.value() == 0) return std::strong_ordering::less;
  if (b.is_materialized() && b.value() == 0) return std::strong_ordering::greater;
  auto prec = static_cast<mpfr_prec_t>(std::max(max_bits(a), max_bits(b)) + 128);
  for (; prec < (mpfr_prec_t(1) << 26); prec *= 2) {
    Mp alo(prec), ahi(prec), blo(prec), bhi(prec);
    log_bounds(a, prec, alo, ahi);
    log_bounds(b, prec, blo, bhi);
    if (mpfr_less_p(ahi.v, blo.v)) return std::strong_ordering::less;
    if (mpfr_greater_p(alo.v, bhi.v)) return std::strong_ordering::greater;
  }
  throw std::domain_error("Gödel code comparison did not separate within precision limit");
}

// ---------------------------------------------------------------------------
// Symbols

Natural symbol_code(const Symbol& s) {
  using K = Symbol::Kind;
  switch (s.kind) {
    case K::Zero: return 1;
    case K::Succ: return 3;
    case K::Plus: return 5;
    case K::Times: return 7;
    case K::Eq: return 9;
    case K::Lt: return 11;
    case K::Not: return 13;
    case K::Or: return 15;
    case K::And: return 17;
    case K::Implies: return 19;
    case K::Exists: return 21;
    case K::Forall: return 23;
    case K::Var: return Natural(25) + 2 * Natural(s.var);
  }
  throw std::invalid_argument("unknown symbol");
}

Symbol symbol_from_code(const GodelCode& c) {
  using K = Symbol::Kind;
  if (!c.is_materialized()) throw DecodeError("symbol code out of range");
  const Natural& n = c.value();
  if (n % 2 == 0) throw DecodeError("even number " + n.str() + " is not a symbol code");
  if (n < 25) {
    static const K table[] = {K::Zero, K::Succ,    K::Plus,   K::Times,  K::Eq,     K::Lt,
                              K::Not,  K::Or,      K::And,    K::Implies, K::Exists, K::Forall};
    return Symbol{table[static_cast<unsigned>(n) / 2], 0};
  }
  Natural idx = (n - 25) / 2;
  if (idx > 1'000'000) throw DecodeError("variable index " + idx.str() + " out of range");
  return Symbol{K::Var, static_cast<unsigned>(idx)};
}

// ---------------------------------------------------------------------------
// Sequences, formulas, proofs

GodelCode encode_seq(const std::vector<Natural>& a) {
  return GodelCode::sequence(std::vector<GodelCode>(a.begin(), a.end()));
}

GodelCode encode_seq(const std::vector<GodelCode>& a) { return GodelCode::sequence(a); }

std::vector<GodelCode> decode_seq(const GodelCode& c) {
  if (!c.is_materialized()) return c.symbolic_components();
  std::string why;
  auto exps = factor_gapless(c.value(), &why);
  if (!exps) throw DecodeError(why);
  return std::vector<GodelCode>(exps->begin(), exps->end());
}

std::vector<Natural> decode_seq_values(const GodelCode& c) {
  std::vector<Natural> out;
  for (const auto& x : decode_seq(c)) {
    if (!x.is_materialized()) throw DecodeError("sequence entry too large to materialize");
    out.push_back(x.value());
  }
  return out;
}

GodelCode encode_formula(const syntax::Formula& f) {
  std::vector<GodelCode> codes;
  for (const auto& s : syntax::to_polish(syntax::expand_iff(f))) codes.emplace_back(symbol_code(s));
  return GodelCode::sequence(std::move(codes));
}

syntax::Formula decode_formula(const GodelCode& c) {
  auto comps = decode_seq(c);
  if (comps.empty()) throw DecodeError("empty symbol sequence is not a formula");
  std::vector<Symbol> symbols;
  symbols.reserve(comps.size());
  for (const auto& x : comps) symbols.push_back(symbol_from_code(x));
  try {
    return syntax::parse_polish(symbols);
  } catch (const DecodeError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DecodeError(e.what());
  }
}

GodelCode encode_proof(const std::vector<syntax::Formula>& lines) {
  if (lines.empty()) throw std::invalid_argument("a proof has at least one line");
  std::vector<GodelCode> codes;
  codes.reserve(lines.size());
  for (const auto& f : lines) codes.push_back(encode_formula(f));
  return GodelCode::sequence(std::move(codes));
}

std::vector<syntax::Formula> decode_proof(const GodelCode& c) {
  auto comps = decode_seq(c);
  if (comps.empty()) throw DecodeError("empty sequence is not a proof");
  std::vector<syntax::Formula> lines;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    try {
      lines.push_back(decode_formula(comps[i]));
    } catch (const DecodeError& e) {
      throw DecodeError("line " + std::to_string(i) + ": " + e.what());
    }
  }
  return lines;
}

}  // namespace metawb::godel
