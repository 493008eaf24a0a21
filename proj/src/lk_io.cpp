#include <cctype>

#include "metawb/lk.hpp"

namespace metawb::lk {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

void print_rec(const LKProof& p, int indent, std::string& out) {
  out.append(indent, ' ');
  out += "(" + rule_tag(p->rule) + " (conclusion " + quote(to_string(p->conclusion)) + ")";
  std::string data;
  if (p->rule == Rule::dE || p->rule == Rule::gE) data += " (pos " + std::to_string(p->data.pos) + ")";
  if (p->data.term) data += " (term " + quote(syntax::to_string(*p->data.term)) + ")";
  if (p->data.eigen) data += " (eigen x" + std::to_string(p->data.eigen->index) + ")";
  if (!data.empty()) out += " (data" + data + ")";
  for (const auto& q : p->premises) {
    out += "\n";
    print_rec(q, indent + 2, out);
  }
  out += ")";
}

struct SExpr {
  bool is_list = false;
  bool is_string = false;
  std::string atom;
  std::size_t pos = 0;
  std::vector<SExpr> items;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  SExpr read_top() {
    SExpr e = read();
    skip();
    if (i_ < s_.size()) fail("trailing input after proof");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw syntax::ParseError(i_, msg); }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    SExpr e;
    e.pos = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      e.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) fail("unclosed '('");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      ++i_;
      e.is_string = true;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        e.atom += s_[i_++];
      }
      if (i_ >= s_.size()) fail("unterminated string");
      ++i_;
      return e;
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"' && s_[i_] != ';')
      e.atom += s_[i_++];
    return e;
  }
};

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg) { throw syntax::ParseError(e.pos, msg); }

const SExpr& one_arg(const SExpr& field, bool want_string) {
  if (field.items.size() != 2 || field.items[1].is_list || field.items[1].is_string != want_string)
    fail_at(field, "malformed (" + field.items[0].atom + " ...) field");
  return field.items[1];
}

VarId parse_var(const SExpr& e) {
  const std::string& a = e.atom;
  if (a.size() < 2 || a[0] != 'x' || a.size() > 8 ||
      a.find_first_not_of("0123456789", 1) != std::string::npos)
    fail_at(e, "expected a variable xN");
  return VarId{static_cast<unsigned>(std::stoul(a.substr(1)))};
}

LKProof build(const SExpr& e, syntax::Signature sig) {
  if (!e.is_list || e.items.empty() || e.items[0].is_list || e.items[0].is_string)
    fail_at(e, "expected (tag ...)");
  auto rule = rule_from_tag(e.items[0].atom);
  if (!rule) fail_at(e.items[0], "unknown rule tag '" + e.items[0].atom + "'");
  std::optional<Sequent> conclusion;
  RuleData data;
  std::vector<LKProof> premises;
  for (std::size_t k = 1; k < e.items.size(); ++k) {
    const SExpr& item = e.items[k];
    if (!item.is_list || item.items.empty()) fail_at(item, "expected a field or premise");
    const std::string& head = item.items[0].atom;
    if (head == "conclusion") {
      const SExpr& str = one_arg(item, true);
      try {
        conclusion = parse_sequent(str.atom, sig);
      } catch (const syntax::ParseError& pe) {
        throw syntax::ParseError(str.pos + 1 + pe.position(), pe.message());
      }
    } else if (head == "data") {
      for (std::size_t j = 1; j < item.items.size(); ++j) {
        const SExpr& f = item.items[j];
        if (!f.is_list || f.items.empty()) fail_at(f, "malformed data field");
        const std::string& key = f.items[0].atom;
        if (key == "pos") {
          const SExpr& n = one_arg(f, false);
          if (n.atom.empty() || n.atom.size() > 6 || n.atom.find_first_not_of("0123456789") != std::string::npos)
            fail_at(n, "expected a position");
          data.pos = std::stoul(n.atom);
        } else if (key == "term") {
          const SExpr& str = one_arg(f, true);
          try {
            data.term = syntax::parse_term(str.atom, sig);
          } catch (const syntax::ParseError& pe) {
            throw syntax::ParseError(str.pos + 1 + pe.position(), pe.message());
          }
        } else if (key == "eigen") {
          data.eigen = parse_var(one_arg(f, false));
        } else {
          fail_at(f, "unknown data field '" + key + "'");
        }
      }
    } else {
      premises.push_back(build(item, sig));
    }
  }
  if (!conclusion) fail_at(e, "missing (conclusion ...)");
  return make_node(*rule, std::move(*conclusion), std::move(data), std::move(premises));
}

}  // namespace

std::string print_proof(const LKProof& p) {
  std::string out;
  print_rec(p, 0, out);
  return out + "\n";
}

LKProof parse_proof(std::string_view text, syntax::Signature sig) {
  Reader r(text);
  return build(r.read_top(), sig);
}

}  // namespace metawb::lk
