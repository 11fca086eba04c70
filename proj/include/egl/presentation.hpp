#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "egl/base.hpp"
#include "egl/word.hpp"

namespace egl {

// A relation lhs = rhs; rhs may be empty (meaning lhs = 1). For enumeration
// and relator checking every relation is used in the single-relator form
// lhs * rhs^-1.
struct Relation {
  Word lhs, rhs;

  friend bool operator==(const Relation&, const Relation&) = default;
};

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<Relation> relations;
  std::optional<int> prime_hint;
  std::optional<std::uint64_t> order_hint;

  friend bool operator==(const Presentation&, const Presentation&) = default;

  int generator_index(const std::string& sym) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == sym) return int(i);
    return -1;
  }

  // Relator lhs * rhs^-1 as signed 1-based generator letters.
  std::vector<int> relator_letters(std::size_t i) const {
    auto resolve = [this](const std::string& s) {
      int k = generator_index(s);
      if (k < 0) throw Error("unresolved symbol '" + s + "'");
      return k;
    };
    std::vector<int> out;
    flatten_word(relations[i].lhs, resolve, out);
    std::vector<int> rhs;
    flatten_word(relations[i].rhs, resolve, rhs);
    detail::append_inverse(rhs, out);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Parser for the line-oriented .grp format:
//
//   # comment
//   group <name>
//   prime <p>            (optional hint)
//   order <n>            (optional hint)
//   gen a b c
//   rel <word>
//   rel <word> = <word>
//
// A word is whitespace-separated terms; a term is a generator, a bracket
// [w1,w2,...] or a parenthesised (word), optionally followed by ^<int>.
// '^' binds tighter than juxtaposition. Exponents in relations must be
// nonzero; bracket arity must be >= 2.

namespace detail {

struct Token {
  enum class Kind { ident, number, lbracket, rbracket, lparen, rparen, comma,
                    caret, equals, end };
  Kind kind;
  std::string text;
  long long value = 0;
  int column = 1;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int line_no)
      : line_(line), line_no_(line_no) {}

  Token next() {
    while (pos_ < line_.size() && std::isspace(uchar(line_[pos_]))) ++pos_;
    Token t;
    t.column = int(pos_) + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      t.kind = Token::Kind::end;
      return t;
    }
    char c = line_[pos_];
    switch (c) {
      case '[': t.kind = Token::Kind::lbracket; ++pos_; return t;
      case ']': t.kind = Token::Kind::rbracket; ++pos_; return t;
      case '(': t.kind = Token::Kind::lparen; ++pos_; return t;
      case ')': t.kind = Token::Kind::rparen; ++pos_; return t;
      case ',': t.kind = Token::Kind::comma; ++pos_; return t;
      case '^': t.kind = Token::Kind::caret; ++pos_; return t;
      case '=': t.kind = Token::Kind::equals; ++pos_; return t;
      default: break;
    }
    if (std::isalpha(uchar(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < line_.size() &&
             (std::isalnum(uchar(line_[pos_])) || line_[pos_] == '_'))
        ++pos_;
      t.kind = Token::Kind::ident;
      t.text = std::string(line_.substr(b, pos_ - b));
      return t;
    }
    if (std::isdigit(uchar(c)) ||
        (c == '-' && pos_ + 1 < line_.size() &&
         std::isdigit(uchar(line_[pos_ + 1])))) {
      std::size_t b = pos_;
      if (c == '-') ++pos_;
      while (pos_ < line_.size() && std::isdigit(uchar(line_[pos_]))) ++pos_;
      t.kind = Token::Kind::number;
      t.text = std::string(line_.substr(b, pos_ - b));
      try {
        t.value = std::stoll(t.text);
      } catch (const std::exception&) {
        throw SyntaxError(line_no_, t.column, "integer out of range");
      }
      return t;
    }
    throw SyntaxError(line_no_, t.column,
                      std::string("unexpected character '") + c + "'");
  }

 private:
  static unsigned char uchar(char c) { return static_cast<unsigned char>(c); }
  std::string_view line_;
  int line_no_;
  std::size_t pos_ = 0;
};

class WordParser {
 public:
  WordParser(LineLexer& lex, int line_no) : lex_(lex), line_no_(line_no) {
    advance();
  }

  // Parses terms until `=`, end of line, or a closing delimiter.
  Word parse_word() {
    Word w;
    while (starts_term()) w.push_back(parse_term());
    if (w.empty())
      throw SyntaxError(line_no_, tok_.column, "expected a word");
    return w;
  }

  const Token& current() const { return tok_; }
  void advance() { tok_ = lex_.next(); }

 private:
  bool starts_term() const {
    return tok_.kind == Token::Kind::ident ||
           tok_.kind == Token::Kind::lbracket ||
           tok_.kind == Token::Kind::lparen;
  }

  Term parse_term() {
    Term t;
    switch (tok_.kind) {
      case Token::Kind::ident:
        t.kind = Term::Kind::generator;
        t.symbol = tok_.text;
        advance();
        break;
      case Token::Kind::lbracket: {
        int col = tok_.column;
        advance();
        t.kind = Term::Kind::bracket;
        t.args.push_back(parse_word());
        while (tok_.kind == Token::Kind::comma) {
          advance();
          t.args.push_back(parse_word());
        }
        if (tok_.kind != Token::Kind::rbracket)
          throw SyntaxError(line_no_, tok_.column, "expected ']' or ','");
        if (t.args.size() < 2)
          throw SyntaxError(line_no_, col, "bracket needs at least 2 arguments");
        advance();
        break;
      }
      case Token::Kind::lparen:
        advance();
        t.kind = Term::Kind::subword;
        t.args.push_back(parse_word());
        if (tok_.kind != Token::Kind::rparen)
          throw SyntaxError(line_no_, tok_.column, "expected ')'");
        advance();
        break;
      default:
        throw SyntaxError(line_no_, tok_.column, "expected a term");
    }
    if (tok_.kind == Token::Kind::caret) {
      advance();
      if (tok_.kind != Token::Kind::number)
        throw SyntaxError(line_no_, tok_.column, "expected an exponent");
      t.exponent = tok_.value;
      advance();
    }
    return t;
  }

  LineLexer& lex_;
  int line_no_;
  Token tok_;
};

inline void check_relation_word(const Word& w, const Presentation& p,
                                int line_no) {
  for (const Term& t : w) {
    if (t.exponent == 0)
      throw SyntaxError(line_no, 1, "zero exponent in relation");
    if (t.kind == Term::Kind::generator) {
      if (p.generator_index(t.symbol) < 0)
        throw UndeclaredSymbol(line_no, 1, t.symbol);
    } else {
      for (const Word& a : t.args) check_relation_word(a, p, line_no);
    }
  }
}

}  // namespace detail

// Parses a word on its own (no generator validation, any exponents).
inline Word parse_word(std::string_view text) {
  detail::LineLexer lex(text, 1);
  detail::WordParser wp(lex, 1);
  Word w = wp.parse_word();
  if (wp.current().kind != detail::Token::Kind::end)
    throw SyntaxError(1, wp.current().column, "trailing input after word");
  return w;
}

inline Presentation parse_presentation(std::string_view text) {
  Presentation p;
  std::vector<int> relation_lines;
  bool saw_group = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    detail::LineLexer lex(line, line_no);
    detail::Token head = lex.next();
    if (head.kind == detail::Token::Kind::end) continue;
    if (head.kind != detail::Token::Kind::ident)
      throw SyntaxError(line_no, head.column, "expected a directive");

    if (head.text == "group") {
      if (saw_group)
        throw SyntaxError(line_no, head.column, "duplicate group directive");
      detail::Token name = lex.next();
      if (name.kind != detail::Token::Kind::ident)
        throw SyntaxError(line_no, name.column, "expected a group name");
      p.name = name.text;
      saw_group = true;
    } else if (head.text == "prime") {
      detail::Token v = lex.next();
      if (v.kind != detail::Token::Kind::number || v.value < 2 ||
          !is_prime(std::uint64_t(v.value)))
        throw SyntaxError(line_no, v.column, "expected a prime");
      p.prime_hint = int(v.value);
    } else if (head.text == "order") {
      detail::Token v = lex.next();
      if (v.kind != detail::Token::Kind::number || v.value < 1)
        throw SyntaxError(line_no, v.column, "expected a positive order");
      p.order_hint = std::uint64_t(v.value);
    } else if (head.text == "gen") {
      for (;;) {
        detail::Token g = lex.next();
        if (g.kind == detail::Token::Kind::end) break;
        if (g.kind != detail::Token::Kind::ident)
          throw SyntaxError(line_no, g.column, "expected a generator name");
        if (p.generator_index(g.text) >= 0)
          throw DuplicateGenerator(line_no, g.column, g.text);
        p.generators.push_back(g.text);
      }
    } else if (head.text == "rel") {
      detail::WordParser wp(lex, line_no);
      Relation r;
      r.lhs = wp.parse_word();
      if (wp.current().kind == detail::Token::Kind::equals) {
        wp.advance();
        r.rhs = wp.parse_word();
      }
      if (wp.current().kind != detail::Token::Kind::end)
        throw SyntaxError(line_no, wp.current().column,
                          "trailing input after relation");
      p.relations.push_back(std::move(r));
      relation_lines.push_back(line_no);
    } else {
      throw SyntaxError(line_no, head.column,
                        "unknown directive '" + head.text + "'");
    }
  }
  if (!saw_group) throw SyntaxError(line_no, 1, "missing group directive");
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    detail::check_relation_word(p.relations[i].lhs, p, relation_lines[i]);
    detail::check_relation_word(p.relations[i].rhs, p, relation_lines[i]);
  }
  return p;
}

// Canonical text form; parse_presentation(to_text(p)) == p.
inline std::string to_text(const Presentation& p) {
  std::ostringstream os;
  os << "group " << p.name << '\n';
  if (p.prime_hint) os << "prime " << *p.prime_hint << '\n';
  if (p.order_hint) os << "order " << *p.order_hint << '\n';
  if (!p.generators.empty()) {
    os << "gen";
    for (const auto& g : p.generators) os << ' ' << g;
    os << '\n';
  }
  for (const Relation& r : p.relations) {
    os << "rel ";
    print_word(os, r.lhs);
    if (!r.rhs.empty()) {
      os << " = ";
      print_word(os, r.rhs);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace egl
