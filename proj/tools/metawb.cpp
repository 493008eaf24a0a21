// metawb: batch front end over the workbench modules.
//
// Exit codes: 0 success / valid / true, 1 invalid / refuted / false,
// 2 unknown (a budget ran out), 64 usage, 65 malformed input, 66 missing
// file. Any text argument written as @path is read from that file.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "metawb/arp.hpp"
#include "metawb/godel.hpp"
#include "metawb/hilbert.hpp"
#include "metawb/lk.hpp"
#include "metawb/ordinals.hpp"
#include "metawb/presburger.hpp"
#include "metawb/recfun.hpp"
#include "metawb/syntax.hpp"

namespace {

using namespace metawb;

enum Exit { kOk = 0, kNo = 1, kUnknown = 2, kUsage = 64, kData = 65, kNoInput = 66 };

struct MissingFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline text, or the contents of a file when written @path.
std::string text_arg(const std::string& s) { return !s.empty() && s[0] == '@' ? read_file(s.substr(1)) : s; }

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

syntax::Signature signature_by_name(const std::string& name) {
  if (name == "arithmetic") return syntax::Signature::arithmetic;
  if (name == "additive") return syntax::Signature::additive;
  if (name == "set") return syntax::Signature::set_theory;
  throw CLI::ValidationError("--signature", "expected arithmetic, additive or set");
}

Natural parse_natural(const std::string& s) {
  std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a natural number: '" + s + "'");
  return Natural(t);
}

std::string path_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string s = "root";
  for (auto i : path) s += "." + std::to_string(i);
  return s;
}

struct Cli {
  CLI::App app{"metawb: executable metamathematics workbench"};
  std::function<int()> action;
  std::string signature = "arithmetic";
  std::string theory = "peano";
  std::string format = "decimal";
  std::vector<std::string> args;
  bool core = false, polish = false;
  std::string defs;
  int digit = 0;
  std::uint64_t run = 0, count = 0;

  // Budgets, one per subcommand so that defaults stay independent.
  std::string enum_budget = "1000000";
  std::size_t enum_nodes = 2'000'000;
  std::size_t cut_nodes = 5'000'000;
  std::uint64_t valuate_steps = 100'000'000;
  recfun::Fuel eval_fuel = 1'000'000;
  std::uint64_t range_budget = 100;
  recfun::Fuel range_fuel = 100'000;
  std::uint64_t member_budget = 1'000;
  recfun::Fuel member_fuel = 100'000;
  std::uint64_t dioph_budget = 20;
  std::uint64_t thue_budget = 100'000;
  std::uint64_t digits_budget = 10'000;

  void on(CLI::App* sub, std::function<int()> f) {
    sub->callback([this, f] { action = f; });
  }

  std::string code_text(const godel::GodelCode& c) const {
    return format == "factored" ? c.to_factored() : c.to_string();
  }

  void build();
  void build_godel();
  void build_hilbert();
  void build_lk();
  void build_arp();
  void build_recfun();
  void build_presburger();
  void build_ord();
};

void Cli::build() {
  app.require_subcommand(1);
  auto* parse = app.add_subcommand("parse", "parse a formula and print it back");
  parse->add_option("formula", args, "formula text or @file")->required()->expected(1);
  parse->add_option("--signature", signature, "arithmetic, additive or set");
  parse->add_flag("--core", core, "rewrite into ~, \\/, exists");
  parse->add_flag("--polish", polish, "also print the Polish symbol string");
  on(parse, [this] {
    auto f = syntax::parse_formula(text_arg(args.at(0)), signature_by_name(signature));
    if (core) f = syntax::normalize_core(f);
    std::cout << syntax::to_string(f) << "\n";
    if (polish) std::cout << syntax::to_string(syntax::to_polish(f)) << "\n";
    return kOk;
  });
  build_godel();
  build_hilbert();
  build_lk();
  build_arp();
  build_recfun();
  build_presburger();
  build_ord();
}

void Cli::build_godel() {
  auto* g = app.add_subcommand("godel", "Godel numbering");
  g->require_subcommand(1);
  auto fmt = [this](CLI::App* s) {
    s->add_option("--format", format, "decimal or factored")->check(CLI::IsMember({"decimal", "factored"}));
  };

  auto* ef = g->add_subcommand("encode-formula", "code of a formula");
  ef->add_option("formula", args)->required()->expected(1);
  ef->add_option("--signature", signature);
  fmt(ef);
  on(ef, [this] {
    auto f = syntax::parse_formula(text_arg(args.at(0)), signature_by_name(signature));
    std::cout << code_text(godel::encode_formula(f)) << "\n";
    return kOk;
  });

  auto* df = g->add_subcommand("decode-formula", "formula with a given code");
  df->add_option("code", args, "decimal or factored code, or @file")->required()->expected(1);
  on(df, [this] {
    std::cout << syntax::to_string(godel::decode_formula(godel::GodelCode::parse(trim(text_arg(args.at(0)))))) << "\n";
    return kOk;
  });

  auto* ep = g->add_subcommand("encode-proof", "code of a derivation file");
  ep->add_option("file", args, "derivation file")->required()->expected(1);
  ep->add_option("--signature", signature);
  fmt(ep);
  on(ep, [this] {
    auto lines = hilbert::parse_derivation(read_file(args.at(0)), signature_by_name(signature));
    std::cout << code_text(godel::encode_proof(lines)) << "\n";
    return kOk;
  });

  auto* dp = g->add_subcommand("decode-proof", "derivation with a given code");
  dp->add_option("code", args)->required()->expected(1);
  on(dp, [this] {
    for (const auto& f : godel::decode_proof(godel::GodelCode::parse(trim(text_arg(args.at(0))))))
      std::cout << syntax::to_string(f) << "\n";
    return kOk;
  });
}

void Cli::build_hilbert() {
  auto theory_opt = [this](CLI::App* s) {
    s->add_option("--theory", theory, "logic, peano, presburger or zf")
        ->check(CLI::IsMember({"logic", "peano", "presburger", "zf"}));
  };

  auto* ch = app.add_subcommand("check-hilbert", "check a Hilbert-style derivation file");
  ch->add_option("file", args)->required()->expected(1);
  theory_opt(ch);
  on(ch, [this] {
    auto t = hilbert::theory_by_name(theory);
    // Parse in the widest signature so that foreign symbols are reported as
    // invalid lines rather than malformed input.
    auto lines = hilbert::parse_derivation(
        read_file(args.at(0)), theory == "zf" ? syntax::Signature::set_theory : syntax::Signature::arithmetic);
    auto r = hilbert::check_derivation(t, lines);
    for (std::size_t i = 0; i < r.justifications.size(); ++i)
      std::cout << (i + 1) << ". " << syntax::to_string(lines[i]) << "  [" << r.justifications[i] << "]\n";
    if (!r.valid) {
      std::cout << "invalid at line " << (r.line + 1) << ": " << r.reason << "\n";
      return kNo;
    }
    std::cout << "valid, " << lines.size() << " lines\n";
    return kOk;
  });

  auto* dm = app.add_subcommand("dem", "Dem(d, a): d codes a proof of the formula coded by a");
  dm->add_option("codes", args, "d and a")->required()->expected(2);
  theory_opt(dm);
  on(dm, [this] {
    bool r = hilbert::dem(godel::GodelCode::parse(trim(text_arg(args.at(0)))),
                          godel::GodelCode::parse(trim(text_arg(args.at(1)))), hilbert::theory_by_name(theory));
    std::cout << (r ? "true" : "false") << "\n";
    return r ? kOk : kNo;
  });

  auto* en = app.add_subcommand("enumerate", "theorems with proof code <= budget");
  theory_opt(en);
  en->add_option("--budget", enum_budget, "largest proof code, decimal or factored")->capture_default_str();
  en->add_option("--max-nodes", enum_nodes, "proof prefixes visited before giving up")->capture_default_str();
  on(en, [this] {
    hilbert::EnumerationLimits lim;
    lim.max_nodes = enum_nodes;
    try {
      auto ts = hilbert::enumerate_theorems(hilbert::theory_by_name(theory), godel::GodelCode::parse(enum_budget), lim);
      for (const auto& t : ts) std::cout << t.code.to_string() << ": " << syntax::to_string(t.formula) << "\n";
      std::cout << ts.size() << " theorems\n";
      return kOk;
    } catch (const hilbert::SearchLimitExceeded& e) {
      std::cout << "unknown: " << e.what() << "\n";
      return kUnknown;
    }
  });
}

void Cli::build_lk() {
  auto* ck = app.add_subcommand("check-lk", "check a sequent-calculus proof file");
  ck->add_option("file", args)->required()->expected(1);
  ck->add_option("--signature", signature);
  on(ck, [this] {
    auto p = lk::parse_proof(read_file(args.at(0)), signature_by_name(signature));
    auto r = lk::check_proof(p);
    if (!r.valid) {
      std::cout << "invalid at " << path_string(r.path) << ": " << r.reason << "\n";
      return kNo;
    }
    std::cout << "valid, cut nodes: " << lk::cut_count(p) << "\n";
    return kOk;
  });

  auto* ce = app.add_subcommand("cut-elim", "print a cut-free proof of the same end-sequent");
  ce->add_option("file", args)->required()->expected(1);
  ce->add_option("--signature", signature);
  ce->add_option("--max-nodes", cut_nodes, "nodes built before giving up")->capture_default_str();
  on(ce, [this] {
    auto p = lk::parse_proof(read_file(args.at(0)), signature_by_name(signature));
    auto r = lk::check_proof(p);
    if (!r.valid) {
      std::cout << "invalid at " << path_string(r.path) << ": " << r.reason << "\n";
      return kNo;
    }
    lk::CutOptions opts;
    opts.max_nodes = cut_nodes;
    lk::CutStats stats;
    try {
      auto q = lk::eliminate_cuts(p, opts, stats);
      std::cout << lk::print_proof(q);
      std::cout << "; cuts eliminated: " << stats.cuts << ", nodes: " << lk::node_count(p) << " -> "
                << lk::node_count(q) << "\n";
      return kOk;
    } catch (const lk::CutBudgetExceeded& e) {
      std::cout << "unknown: " << e.what() << "\n";
      return kUnknown;
    }
  });

  auto* sa = app.add_subcommand("subformula-audit", "check the subformula property of a proof");
  sa->add_option("file", args)->required()->expected(1);
  sa->add_option("--signature", signature);
  on(sa, [this] {
    auto p = lk::parse_proof(read_file(args.at(0)), signature_by_name(signature));
    auto r = lk::check_proof(p);
    if (!r.valid) {
      std::cout << "invalid at " << path_string(r.path) << ": " << r.reason << "\n";
      return kNo;
    }
    bool ok = lk::verify_subformula_property(p);
    std::cout << (ok ? "subformula property holds" : "subformula property fails") << "\n";
    return ok ? kOk : kNo;
  });
}

void Cli::build_arp() {
  auto* a = app.add_subcommand("arp", "equational primitive recursive arithmetic");
  a->require_subcommand(1);

  auto* cd = a->add_subcommand("check-def", "check a definition file");
  cd->add_option("file", args)->required()->expected(1);
  on(cd, [this] {
    try {
      auto env = arp::parse_environment(read_file(args.at(0)));
      for (const auto& d : env.definitions()) {
        auto k = env.recursion_position(d.name);
        std::cout << d.name << "/" << d.arity << ": "
                  << (k ? "recursion on argument " + std::to_string(*k + 1) : std::string("explicit")) << "\n";
      }
      std::cout << "accepted\n";
      return kOk;
    } catch (const arp::DefinitionError& e) {
      std::cout << "rejected: " << e.what() << "\n";
      return kNo;
    }
  });

  auto load_env = [](const std::string& path) {
    return path.empty() ? arp::standard_environment() : arp::parse_environment(read_file(path));
  };

  auto* cp = a->add_subcommand("check-proof", "check an equational proof");
  cp->add_option("files", args, "definition file and proof file")->required()->expected(2);
  on(cp, [this, load_env] {
    auto env = load_env(args.at(0));
    auto p = arp::parse_proof(read_file(args.at(1)));
    auto r = arp::check_equational_proof(p, env);
    if (!r.valid) {
      std::cout << "invalid at line " << (r.line + 1) << ": " << r.reason << "\n";
      return kNo;
    }
    std::cout << "valid, " << p.size() << " lines, proves " << arp::to_string(p.back().eq) << "\n";
    return kOk;
  });

  auto* va = a->add_subcommand("valuate", "value of a closed term");
  va->add_option("term", args)->required()->expected(1);
  va->add_option("--defs", defs, "definition file (default: add, mul, exp2)");
  va->add_option("--budget", valuate_steps, "unfolding steps")->capture_default_str();
  on(va, [this, load_env] {
    auto env = load_env(defs);
    arp::Valuator v(env, valuate_steps);
    try {
      std::cout << v(arp::parse_term(text_arg(args.at(0)))) << "\n";
      return kOk;
    } catch (const arp::ValuationBudgetExceeded& e) {
      std::cout << "unknown: " << e.what() << "\n";
      return kUnknown;
    }
  });

  auto* au = a->add_subcommand("audit", "valuate both sides of a proof's closed conclusion");
  au->add_option("files", args, "definition file and proof file")->required()->expected(2);
  on(au, [this, load_env] {
    auto env = load_env(args.at(0));
    auto p = arp::parse_proof(read_file(args.at(1)));
    auto r = arp::check_equational_proof(p, env);
    if (!r.valid) {
      std::cout << "invalid at line " << (r.line + 1) << ": " << r.reason << "\n";
      return kNo;
    }
    const auto& eq = p.back().eq;
    if (!arp::is_closed(eq.lhs) || !arp::is_closed(eq.rhs)) {
      std::cout << "invalid: conclusion " << arp::to_string(eq) << " is not closed\n";
      return kNo;
    }
    arp::Valuator v(env);
    Natural l = v(eq.lhs), rr = v(eq.rhs);
    std::cout << (l == rr ? "sound: " : "UNSOUND: ") << l << " = " << rr << "\n";
    return l == rr ? kOk : kNo;
  });
}

void Cli::build_recfun() {
  auto* r = app.add_subcommand("recfun", "recursive functions and semi-decision searches");
  r->require_subcommand(1);

  auto* ev = r->add_subcommand("eval", "evaluate an expression under fuel");
  ev->add_option("expr-and-args", args, "expression, then arguments")->required()->expected(1, -1);
  ev->add_option("--fuel", eval_fuel, "primitive steps")->capture_default_str();
  on(ev, [this] {
    auto e = recfun::parse_expr(text_arg(args.at(0)));
    std::vector<Natural> in;
    for (std::size_t i = 1; i < args.size(); ++i) in.push_back(parse_natural(args[i]));
    auto res = recfun::eval(e, in, eval_fuel);
    if (!res.value) {
      std::cout << "unknown: fuel exhausted after " << res.fuel_used << "\n";
      return kUnknown;
    }
    std::cout << *res.value << "\n";
    return kOk;
  });

  auto* en = r->add_subcommand("enumerate", "values on inputs 0..budget");
  en->add_option("expr", args)->required()->expected(1);
  en->add_option("--budget", range_budget, "largest input")->capture_default_str();
  en->add_option("--fuel", range_fuel, "fuel per call")->capture_default_str();
  on(en, [this] {
    auto set = recfun::enumerate_range(recfun::parse_expr(text_arg(args.at(0))), range_budget, range_fuel);
    std::string sep;
    std::cout << "{";
    for (const auto& v : set) {
      std::cout << sep << v;
      sep = ", ";
    }
    std::cout << "}\n";
    return kOk;
  });

  auto* me = r->add_subcommand("member", "search an input m <= budget with f(m) = n");
  me->add_option("expr-and-n", args)->required()->expected(2);
  me->add_option("--budget", member_budget, "largest input")->capture_default_str();
  me->add_option("--fuel", member_fuel, "fuel per call")->capture_default_str();
  on(me, [this] {
    auto w = recfun::semidecide_membership(recfun::parse_expr(text_arg(args.at(0))), parse_natural(args.at(1)),
                                           member_budget, member_fuel);
    if (!w) {
      std::cout << "unknown\n";
      return kUnknown;
    }
    std::cout << "member, witness " << *w << "\n";
    return kOk;
  });

  auto* di = r->add_subcommand("dioph", "search an integer root of a polynomial");
  di->add_option("polynomial", args)->required()->expected(1);
  di->add_option("--budget", dioph_budget, "largest max-norm")->capture_default_str();
  on(di, [this] {
    auto p = recfun::parse_polynomial(text_arg(args.at(0)));
    auto root = recfun::diophantine_search(p, dioph_budget);
    if (!root) {
      std::cout << "unknown\n";
      return kUnknown;
    }
    auto vs = p.variables();
    std::string sep;
    std::cout << "root: ";
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::cout << sep << vs[i] << " = " << (*root)[i];
      sep = ", ";
    }
    std::cout << "\n";
    return kOk;
  });

  auto* th = r->add_subcommand("thue", "derive word f from word e");
  th->add_option("file-e-f", args, "axiom file, then the two words")->required()->expected(3);
  th->add_option("--budget", thue_budget, "words expanded")->capture_default_str();
  on(th, [this] {
    auto s = recfun::parse_thue(read_file(args.at(0)));
    auto trace = recfun::thue_semidecide(s, args.at(1), args.at(2), thue_budget);
    if (!trace) {
      std::cout << "unknown\n";
      return kUnknown;
    }
    std::cout << args.at(1) << "\n";
    for (const auto& st : *trace)
      std::cout << "  axiom " << (st.axiom + 1) << (st.forward ? " ->" : " <-") << " at " << st.position << ": "
                << st.result << "\n";
    std::cout << "derived in " << trace->size() << " steps\n";
    return kOk;
  });

  auto* dg = r->add_subcommand("digits", "decimal digits of sqrt(2), or a run search");
  dg->add_option("--digit", digit)->check(CLI::Range(0, 9));
  dg->add_option("--run", run, "search this many equal digits");
  dg->add_option("--count", count, "print this many digits");
  dg->add_option("--budget", digits_budget, "digits examined")->capture_default_str();
  on(dg, [this] {
    recfun::Sqrt2Digits d;
    if (run == 0) {
      std::cout << "1.";
      for (std::uint64_t i = 0; i < count; ++i) std::cout << d(i);
      std::cout << "\n";
      return kOk;
    }
    auto p = recfun::digit_run_search(std::ref(d), digit, run, digits_budget);
    if (!p) {
      std::cout << "unknown\n";
      return kUnknown;
    }
    std::cout << "run starts at digit " << *p << "\n";
    return kOk;
  });
}

void Cli::build_presburger() {
  auto* p = app.add_subcommand("presburger", "the additive theory of the naturals");
  p->require_subcommand(1);
  auto* qe = p->add_subcommand("qe", "quantifier elimination");
  qe->add_option("formula", args)->required()->expected(1);
  on(qe, [this] {
    auto f = syntax::parse_formula(text_arg(args.at(0)), syntax::Signature::additive);
    std::cout << presburger::to_string(presburger::eliminate_quantifiers(presburger::from_formula(f))) << "\n";
    return kOk;
  });
  auto* de = p->add_subcommand("decide", "truth of a closed sentence");
  de->add_option("formula", args)->required()->expected(1);
  on(de, [this] {
    auto f = syntax::parse_formula(text_arg(args.at(0)), syntax::Signature::additive);
    bool r = presburger::decide(f);
    std::cout << (r ? "true" : "false") << "\n";
    return r ? kOk : kNo;
  });
}

void Cli::build_ord() {
  auto* o = app.add_subcommand("ord", "ordinal notations below epsilon_0");
  o->require_subcommand(1);
  using ordinals::parse_ord;
  auto* cm = o->add_subcommand("compare", "less, equal or greater");
  cm->add_option("a-b", args)->required()->expected(2);
  on(cm, [this] {
    auto c = ordinals::compare(parse_ord(text_arg(args.at(0))), parse_ord(text_arg(args.at(1))));
    std::cout << (c < 0 ? "less" : c > 0 ? "greater" : "equal") << "\n";
    return kOk;
  });
  auto* ad = o->add_subcommand("add", "ordinal sum");
  ad->add_option("a-b", args)->required()->expected(2);
  on(ad, [this] {
    std::cout << ordinals::to_string(ordinals::add(parse_ord(text_arg(args.at(0))), parse_ord(text_arg(args.at(1)))))
              << "\n";
    return kOk;
  });
  auto* pw = o->add_subcommand("pow2", "2 to the power a");
  pw->add_option("a", args)->required()->expected(1);
  on(pw, [this] {
    std::cout << ordinals::to_string(ordinals::two_pow(parse_ord(text_arg(args.at(0))))) << "\n";
    return kOk;
  });
  auto* fs = o->add_subcommand("fundseq", "n-th element of a limit's fundamental sequence");
  fs->add_option("l-n", args)->required()->expected(2);
  on(fs, [this] {
    auto n = parse_natural(args.at(1));
    if (n > 1'000'000) throw std::invalid_argument("index too large");
    std::cout << ordinals::to_string(
                     ordinals::fundamental_sequence(parse_ord(text_arg(args.at(0))), static_cast<unsigned>(n)))
              << "\n";
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  cli.build();
  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app.exit(e);
    return kUsage;
  }
  try {
    return cli.action();
  } catch (const MissingFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const syntax::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kData;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
}
