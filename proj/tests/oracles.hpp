#pragma once

// Dense reference implementations used to cross-check the sparse engine.
// Everything here works on full coordinate vectors over X^(m) and plain
// Gauss-Jordan elimination; nothing calls the library's echelon code.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/koszulkit.hpp"

namespace oracle {

using koszulkit::HomogPoly;
using koszulkit::Rational;
using koszulkit::Term;
using koszulkit::Word;

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

/// X^(m) listed in descending order, built letter by letter.
struct Basis {
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<Word> words;
  std::map<std::vector<unsigned>, std::size_t> index;

  Basis(std::size_t d_, std::size_t m_) : d(d_), m(m_) {
    std::vector<std::vector<unsigned>> cur{{}};
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& w : cur)
        for (std::size_t x = d; x-- > 0;) {
          auto e = w;
          e.push_back(static_cast<unsigned>(x));
          next.push_back(std::move(e));
        }
      cur = std::move(next);
    }
    for (const auto& letters : cur) {
      index.emplace(letters, words.size());
      words.push_back(Word(letters));
    }
  }

  std::size_t size() const { return words.size(); }
  std::size_t at(const Word& w) const { return index.at(w.letters()); }

  Vec coords(const HomogPoly& p) const {
    Vec v(size());
    for (const auto& t : p.terms()) v[at(t.word)] += t.coef;
    return v;
  }

  HomogPoly poly(const Vec& v) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) terms.push_back({words[i], v[i]});
    return HomogPoly(m, std::move(terms));
  }
};

/// Gauss-Jordan: monic pivots, pivot columns cleared, zero rows dropped.
/// Columns are in descending word order, so leftmost pivots are greatest
/// words and the result is the canonical reduced basis.
inline Matrix rref(Matrix a) {
  if (a.empty()) return a;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

inline std::size_t rank(const Matrix& a) { return rref(a).size(); }

/// Basis of {x : A x = 0} for an r × c matrix A.
inline Matrix nullspace(const Matrix& a, std::size_t cols) {
  Matrix e = rref(a);
  std::vector<long> pivot_of_col(cols, -1);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(e[i][c]) != 0) {
        pivot_of_col[c] = static_cast<long>(i);
        break;
      }
  Matrix out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    Vec x(cols);
    x[f] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) x[c] = -e[static_cast<std::size_t>(pivot_of_col[c])][f];
    out.push_back(std::move(x));
  }
  return out;
}

inline Matrix transpose(const Matrix& a, std::size_t cols) {
  Matrix t(cols, Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix rows_of(const Basis& b, const std::vector<HomogPoly>& vs) {
  Matrix m;
  for (const auto& v : vs) m.push_back(b.coords(v));
  return m;
}

inline std::vector<HomogPoly> polys_of(const Basis& b, const Matrix& rows) {
  std::vector<HomogPoly> out;
  for (const auto& r : rows) out.push_back(b.poly(r));
  return out;
}

/// Canonical basis of span(vs).
inline std::vector<HomogPoly> span(const Basis& b, const std::vector<HomogPoly>& vs) {
  return polys_of(b, rref(rows_of(b, vs)));
}

inline std::vector<HomogPoly> sum(const Basis& b, std::vector<HomogPoly> u, const std::vector<HomogPoly>& w) {
  u.insert(u.end(), w.begin(), w.end());
  return span(b, u);
}

/// U ∩ W from the left kernel of the stacked matrix [U; W].
inline std::vector<HomogPoly> intersect(const Basis& b, const std::vector<HomogPoly>& u,
                                        const std::vector<HomogPoly>& w) {
  Matrix mu = rref(rows_of(b, u));
  Matrix mw = rref(rows_of(b, w));
  Matrix stacked = mu;
  stacked.insert(stacked.end(), mw.begin(), mw.end());
  if (stacked.empty()) return {};
  Matrix left = nullspace(transpose(stacked, b.size()), stacked.size());
  Matrix vecs;
  for (const auto& x : left) {
    Vec v(b.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) v[j] += x[i] * mu[i][j];
    vecs.push_back(std::move(v));
  }
  return polys_of(b, rref(vecs));
}

/// X^{left} ⊗ span(vs) ⊗ X^{right}, by explicit word concatenation.
inline std::vector<HomogPoly> shifted(const std::vector<HomogPoly>& vs, std::size_t d, std::size_t left,
                                      std::size_t right) {
  Basis lb(d, left), rb(d, right);
  std::vector<HomogPoly> out;
  for (const auto& a : lb.words)
    for (const auto& v : vs)
      for (const auto& c : rb.words) {
        std::vector<Term> terms;
        for (const auto& t : v.terms()) {
          std::vector<unsigned> letters = a.letters();
          for (unsigned x : t.word.letters()) letters.push_back(x);
          for (unsigned x : c.letters()) letters.push_back(x);
          terms.push_back({Word(letters), t.coef});
        }
        out.push_back(HomogPoly(left + v.degree() + right, std::move(terms)));
      }
  return out;
}

/// Dense operator: column j is the image of basis word j.
inline Matrix operator_matrix(const Basis& b, const std::function<HomogPoly(const Word&)>& f) {
  Matrix m(b.size(), Vec(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) {
    Vec col = b.coords(f(b.words[j]));
    for (std::size_t i = 0; i < b.size(); ++i) m[i][j] = col[i];
  }
  return m;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b.front().size();
  Matrix out(n, Vec(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (sgn(a[i][j]) == 0) continue;
      for (std::size_t l = 0; l < c; ++l) out[i][l] += a[i][j] * b[j][l];
    }
  return out;
}

inline Matrix add(Matrix a, const Matrix& b, const Rational& scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += scale * b[i][j];
  return a;
}

/// The projector onto span(non-pivot words) along W, found by solving for
/// the kernel component of every basis word. W must be given in reduced form.
inline Matrix projector_along(const Basis& b, const std::vector<HomogPoly>& w_basis) {
  Matrix w = rows_of(b, w_basis);
  std::vector<std::size_t> pivots;
  for (const auto& row : w)
    for (std::size_t c = 0; c < row.size(); ++c)
      if (sgn(row[c]) != 0) {
        pivots.push_back(c);
        break;
      }
  const std::size_t k = w.size();
  Matrix out(b.size(), Vec(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) {
    // Solve Σ_i c_i w_i[p] = e_j[p] for every pivot column p.
    Matrix aug(k, Vec(k + 1));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i) aug[r][i] = w[i][pivots[r]];
      aug[r][k] = pivots[r] == j ? 1 : 0;
    }
    Matrix red = rref(aug);
    Vec c(k);
    for (const auto& row : red)
      for (std::size_t i = 0; i < k; ++i)
        if (sgn(row[i]) != 0) {
          c[i] = row[k];
          break;
        }
    for (std::size_t r = 0; r < b.size(); ++r) {
      Rational v = r == j ? 1 : 0;
      for (std::size_t i = 0; i < k; ++i) v -= c[i] * w[i][r];
      out[r][j] = v;
    }
  }
  return out;
}

/// ⟨A, B⟩^k with B the rightmost factor.
inline Matrix alternating(const Matrix& a, const Matrix& b, int k) {
  Matrix out = identity(a.size());
  for (int j = 1; j <= k; ++j) out = mul(j % 2 == 1 ? b : a, out);
  return out;
}

/// Binomial coefficient for small arguments.
inline std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// J_n by brute force: J_0 = K, J_1 = X, otherwise the intersection of all
/// shifted copies of R̄ in degree l_N(n).
inline std::vector<HomogPoly> j_space(const std::vector<HomogPoly>& rbar, std::size_t d, std::size_t N, std::size_t n) {
  const std::size_t len = (n / 2) * N + (n % 2);
  Basis b(d, len);
  if (n <= 1) {
    std::vector<HomogPoly> all;
    for (const auto& w : b.words) all.push_back(HomogPoly::monomial(w));
    return all;
  }
  std::vector<HomogPoly> acc = span(b, shifted(rbar, d, 0, len - N));
  for (std::size_t i = 1; i + N <= len; ++i) acc = intersect(b, acc, span(b, shifted(rbar, d, i, len - N - i)));
  return acc;
}

}  // namespace oracle
