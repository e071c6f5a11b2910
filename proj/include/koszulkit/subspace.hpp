#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

/// A subspace of span(X^(m)) in reduced echelon form with respect to the
/// descending word order: every basis vector is monic, leading words are
/// distinct, and no leading word occurs in another basis vector. The form is
/// canonical, so two subspaces are equal iff their bases are identical.
class Subspace {
public:
  explicit Subspace(std::size_t degree = 0) : degree_(degree) {}

  static Subspace zero(std::size_t degree) { return Subspace(degree); }

  static Subspace full(std::size_t alphabet_size, std::size_t degree) {
    Subspace s(degree);
    for_each_word_descending(alphabet_size, degree,
                             [&](const Word& w) { s.push_unchecked(HomogPoly::monomial(w)); });
    return s;
  }

  /// Wraps a basis that is already in reduced echelon form, sorted by
  /// descending leading word. Only cheap structural checks are made.
  static Subspace from_reduced_basis(std::size_t degree, std::vector<HomogPoly> basis) {
    Subspace s(degree);
    s.basis_.reserve(basis.size());
    for (auto& b : basis) {
      if (b.degree() != degree) throw PreconditionError("basis vector of wrong degree");
      if (!s.basis_.empty() && !(b.leading_term().word.packed() < s.basis_.back().leading_term().word.packed()))
        throw InvariantViolation("basis not sorted by descending leading word");
      s.push_unchecked(std::move(b));
    }
    return s;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<HomogPoly>& basis() const noexcept { return basis_; }

  std::optional<std::size_t> pivot_index(const Word& w) const {
    auto it = pivots_.find(w.packed());
    if (it == pivots_.end()) return std::nullopt;
    return it->second;
  }

  bool is_pivot(const Word& w) const { return pivots_.count(w.packed()) != 0; }

  /// The remainder of v modulo this subspace: v with every pivot word p
  /// replaced by p - basis(p). Equals the reduction operator with kernel
  /// this subspace applied to v.
  HomogPoly reduce(const HomogPoly& v) const {
    check_degree(v.degree());
    std::vector<Term> out;
    out.reserve(v.size());
    bool touched = false;
    for (const auto& t : v.terms()) {
      auto it = pivots_.find(t.word.packed());
      if (it == pivots_.end()) {
        out.push_back(t);
        continue;
      }
      touched = true;
      const auto& tail = basis_[it->second].terms();
      for (std::size_t i = 1; i < tail.size(); ++i) out.push_back({tail[i].word, -t.coef * tail[i].coef});
    }
    if (!touched) return v;
    return HomogPoly(degree_, std::move(out));
  }

  /// Image of a single word under the reduction operator with this kernel.
  HomogPoly reduce_word(const Word& w) const {
    auto it = pivots_.find(w.packed());
    if (it == pivots_.end()) return HomogPoly::monomial(w);
    const auto& tail = basis_[it->second].terms();
    std::vector<Term> out;
    out.reserve(tail.size() - 1);
    for (std::size_t i = 1; i < tail.size(); ++i) out.push_back({tail[i].word, -tail[i].coef});
    return HomogPoly(degree_, std::move(out));
  }

  bool contains(const HomogPoly& v) const { return reduce(v).is_zero(); }

  bool includes(const Subspace& w) const {
    check_degree(w.degree_);
    for (const auto& b : w.basis_)
      if (!contains(b)) return false;
    return true;
  }

  /// Coordinates of v in this basis.
  std::vector<Rational> solve_in_basis(const HomogPoly& v) const {
    check_degree(v.degree());
    std::vector<Rational> coords(basis_.size());
    for (const auto& t : v.terms()) {
      auto it = pivots_.find(t.word.packed());
      if (it != pivots_.end()) coords[it->second] = t.coef;
    }
    if (!contains(v)) throw PreconditionError("not in subspace");
    return coords;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.degree_ == b.degree_ && a.basis_ == b.basis_;
  }

private:
  friend class EchelonBuilder;

  void push_unchecked(HomogPoly b) {
    pivots_.emplace(b.leading_term().word.packed(), basis_.size());
    basis_.push_back(std::move(b));
  }

  void check_degree(std::size_t d) const {
    if (d != degree_) throw PreconditionError("degree mismatch: subspace of degree " + std::to_string(degree_) +
                                              " and vector of degree " + std::to_string(d));
  }

  std::size_t degree_;
  std::vector<HomogPoly> basis_;
  std::unordered_map<std::uint64_t, std::size_t> pivots_;
};

/// Incremental Gaussian elimination producing a canonical Subspace.
/// Vectors are kept in semi-echelon form (distinct leading words, each new
/// vector reduced against all earlier ones); finish() back-substitutes.
class EchelonBuilder {
public:
  explicit EchelonBuilder(std::size_t degree) : degree_(degree) {}

  explicit EchelonBuilder(const Subspace& start) : degree_(start.degree()) {
    rows_.reserve(start.dim());
    for (const auto& b : start.basis()) {
      pivots_.emplace(b.leading_term().word.packed(), rows_.size());
      rows_.push_back(b);
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  /// Reduces v fully against the current rows. Returns true if v enlarged
  /// the span.
  bool insert(const HomogPoly& v) {
    if (v.degree() != degree_) throw PreconditionError("mixed degrees in span");
    if (v.is_zero()) return false;
    HomogPoly r = reduce_full(v);
    if (r.is_zero()) return false;
    Rational inv = 1 / r.leading_term().coef;
    r *= inv;
    pivots_.emplace(r.leading_term().word.packed(), rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  Subspace finish() && {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rows_[a].leading_term().word.packed() < rows_[b].leading_term().word.packed();
    });
    // Ascending pass: each row only refers to smaller pivots, which are final.
    std::unordered_map<std::uint64_t, std::size_t> done;
    std::vector<HomogPoly> finals;
    finals.reserve(rows_.size());
    for (std::size_t idx : order) {
      const auto& row = rows_[idx].terms();
      std::vector<Term> out;
      out.reserve(row.size());
      out.push_back(row.front());
      bool touched = false;
      for (std::size_t i = 1; i < row.size(); ++i) {
        auto it = done.find(row[i].word.packed());
        if (it == done.end()) {
          out.push_back(row[i]);
          continue;
        }
        touched = true;
        const auto& tail = finals[it->second].terms();
        for (std::size_t j = 1; j < tail.size(); ++j) out.push_back({tail[j].word, -row[i].coef * tail[j].coef});
      }
      done.emplace(row.front().word.packed(), finals.size());
      finals.push_back(touched ? HomogPoly(degree_, std::move(out)) : std::move(rows_[idx]));
    }
    Subspace s(degree_);
    for (auto it = finals.rbegin(); it != finals.rend(); ++it) s.push_unchecked(std::move(*it));
    return s;
  }

private:
  HomogPoly reduce_full(const HomogPoly& v) const {
    std::map<std::uint64_t, Rational, std::greater<>> work;
    for (const auto& t : v.terms()) work.emplace(t.word.packed(), t.coef);
    std::vector<Term> out;
    while (!work.empty()) {
      auto it = work.begin();
      const std::uint64_t w = it->first;
      Rational c = std::move(it->second);
      work.erase(it);
      auto p = pivots_.find(w);
      if (p == pivots_.end()) {
        out.push_back({Word::from_packed(w, degree_), std::move(c)});
        continue;
      }
      const auto& row = rows_[p->second].terms();
      for (std::size_t i = 1; i < row.size(); ++i) {
        auto [slot, inserted] = work.try_emplace(row[i].word.packed());
        slot->second -= c * row[i].coef;
        if (sgn(slot->second) == 0) work.erase(slot);
      }
    }
    return HomogPoly(degree_, std::move(out));
  }

  std::size_t degree_;
  std::vector<HomogPoly> rows_;
  std::unordered_map<std::uint64_t, std::size_t> pivots_;
};

/// Canonical basis of the span of the given vectors.
inline Subspace span(const std::vector<HomogPoly>& vectors, std::optional<std::size_t> degree = std::nullopt) {
  if (vectors.empty()) {
    if (!degree) throw PreconditionError("span of an empty list needs an explicit degree");
    return Subspace(*degree);
  }
  const std::size_t d = degree.value_or(vectors.front().degree());
  EchelonBuilder builder(d);
  for (const auto& v : vectors) builder.insert(v);
  return std::move(builder).finish();
}

inline Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.degree() != w.degree()) throw PreconditionError("degree mismatch in subspace sum");
  const Subspace& big = u.dim() >= w.dim() ? u : w;
  const Subspace& small = u.dim() >= w.dim() ? w : u;
  if (small.is_zero()) return big;
  EchelonBuilder builder(big);
  for (const auto& b : small.basis()) builder.insert(b);
  return std::move(builder).finish();
}

namespace detail {

/// Sparse coefficient vector indexed by basis position, sorted ascending.
using Combination = std::vector<std::pair<std::size_t, Rational>>;

inline void combination_axpy(Combination& a, const Rational& c, const Combination& b) {
  Combination out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Rational s = i->second + c * j->second;
      if (sgn(s) != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace detail

/// U ∩ W. Parametrises the smaller space by its basis and computes the kernel
/// of its remainders modulo the larger one.
inline Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.degree() != w.degree()) throw PreconditionError("degree mismatch in subspace intersection");
  const Subspace& small = u.dim() <= w.dim() ? u : w;
  const Subspace& big = u.dim() <= w.dim() ? w : u;
  if (small.is_zero()) return Subspace(u.degree());

  struct Row {
    HomogPoly r;
    detail::Combination c;
  };
  std::vector<Row> rows;
  std::unordered_map<std::uint64_t, std::size_t> pivots;
  std::vector<HomogPoly> kernel;

  for (std::size_t i = 0; i < small.dim(); ++i) {
    Row cur{big.reduce(small.basis()[i]), {{i, Rational(1)}}};
    while (!cur.r.is_zero()) {
      const Term& lead = cur.r.leading_term();
      auto p = pivots.find(lead.word.packed());
      if (p == pivots.end()) break;
      const Row& row = rows[p->second];
      Rational c = -lead.coef / row.r.leading_term().coef;
      cur.r.axpy(c, row.r);
      detail::combination_axpy(cur.c, c, row.c);
    }
    if (cur.r.is_zero()) {
      HomogPoly v(u.degree());
      for (const auto& [j, coef] : cur.c) v.axpy(coef, small.basis()[j]);
      kernel.push_back(std::move(v));
    } else {
      pivots.emplace(cur.r.leading_term().word.packed(), rows.size());
      rows.push_back(std::move(cur));
    }
  }
  return span(kernel, u.degree());
}

/// span(X^left) ⊗ W ⊗ span(X^right). Tensoring with words on either side
/// preserves reduced echelon form, so no elimination is needed.
inline Subspace tensor_with_words(const Subspace& w, std::size_t alphabet_size, std::size_t left, std::size_t right) {
  const std::vector<Word> lw = all_words_descending(alphabet_size, left);
  const std::vector<Word> rw = all_words_descending(alphabet_size, right);
  std::vector<HomogPoly> basis;
  basis.reserve(lw.size() * w.dim() * rw.size());
  for (const auto& a : lw)
    for (const auto& b : w.basis())
      for (const auto& c : rw) basis.push_back(tensor_expand(a, b, c));
  return Subspace::from_reduced_basis(left + w.degree() + right, std::move(basis));
}

}  // namespace koszulkit
