#pragma once

#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "egl/base.hpp"

namespace egl {

// A word is a sequence of terms. Each term is a generator symbol, a bracket
// [w1,...,wk] (left-normed commutator, arity >= 2), or a parenthesised
// subword, raised to an integer exponent.
struct Term;
using Word = std::vector<Term>;

struct Term {
  enum class Kind { generator, bracket, subword };
  Kind kind = Kind::generator;
  std::string symbol;          // Kind::generator
  std::vector<Word> args;      // bracket arguments, or one entry for subword
  long long exponent = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

inline Term gen_term(std::string sym, long long e = 1) {
  Term t;
  t.kind = Term::Kind::generator;
  t.symbol = std::move(sym);
  t.exponent = e;
  return t;
}

inline Term bracket_term(std::vector<Word> args, long long e = 1) {
  Term t;
  t.kind = Term::Kind::bracket;
  t.args = std::move(args);
  t.exponent = e;
  return t;
}

// ---------------------------------------------------------------------------
// Printing. Output re-parses to the same word.

inline void print_word(std::ostream& os, const Word& w);

inline void print_term(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case Term::Kind::generator:
      os << t.symbol;
      break;
    case Term::Kind::bracket: {
      os << '[';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ',';
        print_word(os, t.args[i]);
      }
      os << ']';
      break;
    }
    case Term::Kind::subword:
      os << '(';
      print_word(os, t.args.front());
      os << ')';
      break;
  }
  if (t.exponent != 1) os << '^' << t.exponent;
}

inline void print_word(std::ostream& os, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    print_term(os, w[i]);
  }
}

inline std::string to_string(const Word& w) {
  std::ostringstream os;
  print_word(os, w);
  return os.str();
}

// ---------------------------------------------------------------------------
// Flattening into generator letters. A letter is +(i+1) for generator i and
// -(i+1) for its inverse. Brackets expand left-normed:
// [u,v] -> u^-1 v^-1 u v, [u,v,w] -> [[u,v],w].

namespace detail {

inline constexpr std::size_t kMaxRelatorLetters = 1u << 20;

inline void append_inverse(const std::vector<int>& w, std::vector<int>& out) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
}

inline void append_power(const std::vector<int>& base, long long e,
                         std::vector<int>& out) {
  if (e == 0) return;
  std::vector<int> unit;
  if (e < 0) {
    append_inverse(base, unit);
    e = -e;
  } else {
    unit = base;
  }
  if (unit.size() * std::size_t(e) + out.size() > kMaxRelatorLetters)
    throw Error("word expands to too many letters");
  for (long long i = 0; i < e; ++i)
    out.insert(out.end(), unit.begin(), unit.end());
}

}  // namespace detail

// `resolve` maps a generator symbol to its 0-based index (throws on unknown).
inline void flatten_word(const Word& w,
                         const std::function<int(const std::string&)>& resolve,
                         std::vector<int>& out) {
  for (const Term& t : w) {
    std::vector<int> base;
    switch (t.kind) {
      case Term::Kind::generator:
        base.push_back(resolve(t.symbol) + 1);
        break;
      case Term::Kind::bracket: {
        std::vector<int> acc;
        flatten_word(t.args[0], resolve, acc);
        for (std::size_t i = 1; i < t.args.size(); ++i) {
          std::vector<int> rhs;
          flatten_word(t.args[i], resolve, rhs);
          std::vector<int> next;
          detail::append_inverse(acc, next);
          detail::append_inverse(rhs, next);
          next.insert(next.end(), acc.begin(), acc.end());
          next.insert(next.end(), rhs.begin(), rhs.end());
          acc = std::move(next);
        }
        base = std::move(acc);
        break;
      }
      case Term::Kind::subword:
        flatten_word(t.args.front(), resolve, base);
        break;
    }
    detail::append_power(base, t.exponent, out);
  }
}

// Collects every generator symbol occurring in w.
inline void collect_symbols(const Word& w, std::vector<std::string>& out) {
  for (const Term& t : w) {
    if (t.kind == Term::Kind::generator) {
      out.push_back(t.symbol);
    } else {
      for (const Word& a : t.args) collect_symbols(a, out);
    }
  }
}

// Renames generator symbols in place (used when direct products must avoid
// symbol collisions).
inline void rename_symbols(
    Word& w, const std::function<std::string(const std::string&)>& f) {
  for (Term& t : w) {
    if (t.kind == Term::Kind::generator) {
      t.symbol = f(t.symbol);
    } else {
      for (Word& a : t.args) rename_symbols(a, f);
    }
  }
}

}  // namespace egl
