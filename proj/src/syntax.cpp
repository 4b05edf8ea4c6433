#include "prm/syntax.hpp"

#include <cctype>
#include <limits>
#include <vector>

namespace prm {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::size_t nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a natural number");
    }
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t d = static_cast<std::size_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::size_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Term term() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    ++pos_;
    switch (c) {
      case 'S':
        return Term::succ();
      case 'Z': {
        expect('(');
        const std::size_t n = nat();
        expect(')');
        return Term::zero(n);
      }
      case 'P': {
        expect('(');
        const std::size_t i = nat();
        expect(',');
        const std::size_t n = nat();
        expect(')');
        return Term::proj(i, n);
      }
      case 'C': {
        expect('(');
        Term outer = term();
        expect(';');
        std::vector<Term> inners;
        inners.push_back(term());
        while (peek() == ',') {
          ++pos_;
          inners.push_back(term());
        }
        expect(')');
        return Term::comp(std::move(outer), std::move(inners));
      }
      case 'R': {
        expect('(');
        Term base = term();
        expect(';');
        Term step = term();
        expect(')');
        return Term::prim_rec(std::move(base), std::move(step));
      }
      default:
        --pos_;
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Zero:
      out += "Z(" + std::to_string(t.declared_arity()) + ")";
      return;
    case TermKind::Succ:
      out += "S";
      return;
    case TermKind::Proj:
      out += "P(" + std::to_string(t.proj_index()) + "," + std::to_string(t.declared_arity()) + ")";
      return;
    case TermKind::Comp: {
      out += "C(";
      print_into(t.outer(), out);
      out += ";";
      bool first = true;
      for (const Term& inner : t.inners()) {
        if (!first) out += ",";
        first = false;
        print_into(inner, out);
      }
      out += ")";
      return;
    }
    case TermKind::PrimRec:
      out += "R(";
      print_into(t.base(), out);
      out += ";";
      print_into(t.step(), out);
      out += ")";
      return;
  }
}

}  // namespace

Term parse_term_unchecked(std::string_view text) { return Parser(text).parse(); }

Term parse_term(std::string_view text) {
  Term t = parse_term_unchecked(text);
  t.validate();
  return t;
}

std::string print_term(const Term& term) {
  std::string out;
  print_into(term, out);
  return out;
}

}  // namespace prm
