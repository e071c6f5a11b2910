#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

using Rational = mpq_class;

struct Term {
  Word word;
  Rational coef;

  friend bool operator==(const Term& a, const Term& b) { return a.word == b.word && a.coef == b.coef; }
};

/// Sorts terms by descending word, merges equal words and drops zeros.
inline std::vector<Term> canonicalize_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.word.packed() > b.word.packed(); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().word == t.word) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  return out;
}

/// A formal rational combination of words that all have the same length.
/// Terms are kept sorted by descending word with no zero coefficients, so two
/// polynomials are equal iff their term lists are equal.
class HomogPoly {
public:
  explicit HomogPoly(std::size_t degree = 0) : degree_(degree) {}

  HomogPoly(std::size_t degree, std::vector<Term> terms) : degree_(degree) {
    for (const auto& t : terms)
      if (t.word.length() != degree)
        throw PreconditionError("term of length " + std::to_string(t.word.length()) +
                                " in a polynomial of degree " + std::to_string(degree));
    terms_ = canonicalize_terms(std::move(terms));
  }

  static HomogPoly monomial(const Word& w, Rational c = 1) {
    HomogPoly p(w.length());
    if (sgn(c) != 0) p.terms_.push_back({w, std::move(c)});
    return p;
  }

  std::size_t degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  Rational coefficient(const Word& w) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const Term& t, const Word& x) {
      return t.word.packed() > x.packed();
    });
    if (it != terms_.end() && it->word == w) return it->coef;
    return 0;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw PreconditionError("no leading term");
    return terms_.front();
  }

  HomogPoly& operator+=(const HomogPoly& o) { return axpy(1, o); }
  HomogPoly& operator-=(const HomogPoly& o) { return axpy(-1, o); }

  /// this += c * o
  HomogPoly& axpy(const Rational& c, const HomogPoly& o) {
    check_degree(o);
    if (sgn(c) == 0 || o.is_zero()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->word.packed() > b->word.packed())) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->word.packed() > a->word.packed()) {
        out.push_back({b->word, c * b->coef});
        ++b;
      } else {
        Rational s = a->coef + c * b->coef;
        if (sgn(s) != 0) out.push_back({a->word, std::move(s)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  HomogPoly& operator*=(const Rational& c) {
    if (sgn(c) == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.coef *= c;
    }
    return *this;
  }

  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(const Rational& c, HomogPoly a) { return a *= c; }
  friend HomogPoly operator-(HomogPoly a) { return a *= Rational(-1); }

  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

private:
  void check_degree(const HomogPoly& o) const {
    if (o.degree_ != degree_) throw PreconditionError("degree mismatch in polynomial arithmetic");
  }

  std::size_t degree_;
  std::vector<Term> terms_;
};

/// (lm(f), lc(f)).
inline std::pair<Word, Rational> leading(const HomogPoly& f) {
  const Term& t = f.leading_term();
  return {t.word, t.coef};
}

/// The product u ⊗ v in the tensor algebra: words concatenate, coefficients
/// multiply.
inline HomogPoly tensor_expand(const HomogPoly& u, const HomogPoly& v) {
  std::vector<Term> terms;
  terms.reserve(u.size() * v.size());
  for (const auto& a : u.terms())
    for (const auto& b : v.terms()) terms.push_back({concat(a.word, b.word), a.coef * b.coef});
  return HomogPoly(u.degree() + v.degree(), std::move(terms));
}

inline HomogPoly tensor_expand(const Word& left, const HomogPoly& v, const Word& right) {
  std::vector<Term> terms;
  terms.reserve(v.size());
  for (const auto& b : v.terms()) terms.push_back({concat(left, b.word, right), b.coef});
  HomogPoly out(left.length() + v.degree() + right.length(), std::move(terms));
  return out;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

/// Renders a polynomial in the relation-expression grammar, e.g.
/// "x2*x1*x1 - 2*x1*x2*x1 + x1*x1*x2".
inline std::string format_poly(const HomogPoly& p, const Alphabet& alphabet) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational mag = abs(t.coef);
    const bool negative = sgn(t.coef) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit) s += format_rational(mag);
    if (t.word.empty()) {
      if (unit) s += "1";
    } else {
      if (!unit) s += "*";
      s += format_word(t.word, alphabet);
    }
  }
  return s;
}

}  // namespace koszulkit
