#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

namespace detail {

class ExprParser {
public:
  ExprParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  HomogPoly parse() {
    std::vector<Term> terms;
    std::optional<std::size_t> degree;
    skip_ws();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      const std::size_t term_start = pos_;
      Term t = parse_term();
      if (sign < 0) t.coef = -t.coef;
      if (degree && *degree != t.word.length()) {
        pos_ = term_start;
        fail("term of degree " + std::to_string(t.word.length()) + " in an expression of degree " +
             std::to_string(*degree));
      }
      degree = t.word.length();
      terms.push_back(std::move(t));
      skip_ws();
    }
    return HomogPoly(*degree, std::move(terms));
  }

private:
  Term parse_term() {
    Rational coef = 1;
    Word word;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = parse_number();
      have_factor = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        return {word, coef};
      }
    }
    for (;;) {
      if (at_end() || !is_ident_start(peek())) fail(have_factor ? "expected generator name" : "expected term");
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(peek())) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto letter = alphabet_.find(name);
      if (!letter) {
        pos_ = start;
        fail("unknown generator '" + std::string(name) + "'");
      }
      if (word.length() >= kMaxWordLength) fail("word too long");
      word.push_back(static_cast<unsigned>(*letter));
      have_factor = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        continue;
      }
      return {word, coef};
    }
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string num(text_.substr(start, pos_ - start));
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t dstart = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (dstart == pos_) fail("expected denominator");
      std::string den(text_.substr(dstart, pos_ - dstart));
      mpz_class d(den);
      if (d == 0) {
        pos_ = dstart;
        fail("zero denominator");
      }
      Rational q(mpz_class(num), d);
      q.canonicalize();
      return q;
    }
    return Rational(mpz_class(num));
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(msg + " at column " + std::to_string(pos_ + 1), 1, static_cast<int>(pos_ + 1));
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `c*g1*...*gk` terms joined by '+'/'-'. Coefficients are optional
/// integers or p/q rationals; whitespace is ignored. All terms must have the
/// same length. Errors carry the 1-based column of the offending token.
inline HomogPoly parse_expression(std::string_view text, const Alphabet& alphabet) {
  return detail::ExprParser(text, alphabet).parse();
}

}  // namespace koszulkit
