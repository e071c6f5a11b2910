#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/reduction_operator.hpp"
#include "koszulkit/subspace.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

/// An N-homogeneous presentation ⟨X | R⟩ in reduced form. The relations are
/// the reduced echelon basis of span(R): monic, with pairwise distinct
/// leading words and tails free of leading words.
class Presentation {
public:
  Presentation(Alphabet alphabet, std::size_t n, Subspace relation_space)
      : alphabet_(std::move(alphabet)), n_(n), rbar_(std::move(relation_space)) {
    if (rbar_.degree() != n_) throw PreconditionError("relation space of wrong degree");
    for (std::size_t i = 0; i < rbar_.dim(); ++i) lead_index_.emplace(rbar_.basis()[i].leading_term().word.packed(), i);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t N() const noexcept { return n_; }
  const std::vector<HomogPoly>& relations() const noexcept { return rbar_.basis(); }
  const Subspace& relation_space() const noexcept { return rbar_; }

  /// The reduction operator on X^(N) with kernel R̄.
  ReductionOperator S() const { return {alphabet_size(), rbar_}; }

  /// id^{⊗i} ⊗ S ⊗ id^{⊗(m-N-i)} on X^(m).
  ReductionOperator S_at(std::size_t i, std::size_t m) const {
    if (m < n_ || i > m - n_) throw PreconditionError("S_i^(m) needs 0 <= i <= m - N");
    return {alphabet_size(), tensor_with_words(rbar_, alphabet_size(), i, m - n_ - i)};
  }

  std::optional<std::size_t> relation_with_leading(const Word& w) const {
    if (w.length() != n_) return std::nullopt;
    auto it = lead_index_.find(w.packed());
    if (it == lead_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Leftmost position i such that w[i, i+N) is a leading word, together with
  /// the relation index.
  std::optional<std::pair<std::size_t, std::size_t>> leftmost_reducible_window(const Word& w) const {
    if (w.length() < n_) return std::nullopt;
    for (std::size_t i = 0; i + n_ <= w.length(); ++i)
      if (auto r = relation_with_leading(w.subword(i, n_))) return std::pair{i, *r};
    return std::nullopt;
  }

  bool is_normal_word(const Word& w) const { return !leftmost_reducible_window(w); }

  /// Normal words of length m in descending order.
  std::vector<Word> normal_words(std::size_t m) const {
    std::vector<Word> cur{Word{}};
    for (std::size_t len = 1; len <= m; ++len) {
      std::vector<Word> next;
      next.reserve(cur.size() * alphabet_size());
      for (const auto& w : cur)
        for (std::size_t x = alphabet_size(); x-- > 0;) {
          Word e = concat(w, Word{static_cast<unsigned>(x)});
          if (len < n_ || !relation_with_leading(e.suffix(n_))) next.push_back(e);
        }
      cur = std::move(next);
    }
    return cur;
  }

private:
  Alphabet alphabet_;
  std::size_t n_;
  Subspace rbar_;
  std::unordered_map<std::uint64_t, std::size_t> lead_index_;
};

/// Validates raw relations and brings them to reduced form. The result is the
/// reduced echelon basis of their span, which generates the same two-sided
/// ideal (all relations share the degree N).
inline Presentation load_and_interreduce(Alphabet alphabet, std::size_t n, const std::vector<HomogPoly>& raw) {
  if (n < 2) throw InputError("N must be at least 2");
  if (n > kMaxWordLength) throw InputError("N exceeds the maximum word length");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].is_zero()) throw InputError("relation " + std::to_string(i + 1) + " is zero");
    if (raw[i].degree() != n)
      throw InputError("relation " + std::to_string(i + 1) + " has degree " + std::to_string(raw[i].degree()) +
                       ", expected " + std::to_string(n));
    for (const auto& t : raw[i].terms())
      for (std::size_t j = 0; j < t.word.length(); ++j)
        if (t.word[j] >= alphabet.size()) throw InputError("relation uses a letter outside the alphabet");
  }
  return {std::move(alphabet), n, span(raw, n)};
}

/// r_{left f right}: replaces left·lm(f)·right by left·(lm(f) - f)·right.
inline HomogPoly apply_reduction(const Presentation& p, const HomogPoly& v, const Word& left, std::size_t relation,
                                 const Word& right) {
  const HomogPoly& f = p.relations().at(relation);
  const Word target = concat(left, f.leading_term().word, right);
  if (target.length() != v.degree()) throw PreconditionError("reduction of the wrong degree");
  const Rational c = v.coefficient(target);
  HomogPoly out = v;
  if (sgn(c) != 0) out.axpy(-c, tensor_expand(left, f, right));
  return out;
}

/// Rewrites f until no term contains a leading word. The greatest reducible
/// term is reduced first, at its leftmost reducible window.
inline HomogPoly normal_form(const Presentation& p, const HomogPoly& f) {
  const std::size_t n = p.N();
  std::map<std::uint64_t, Rational, std::greater<>> work;
  for (const auto& t : f.terms()) work.emplace(t.word.packed(), t.coef);
  std::vector<Term> out;
  while (!work.empty()) {
    auto it = work.begin();
    const Word w = Word::from_packed(it->first, f.degree());
    Rational c = std::move(it->second);
    work.erase(it);
    auto window = p.leftmost_reducible_window(w);
    if (!window) {
      out.push_back({w, std::move(c)});
      continue;
    }
    const auto [pos, rel] = *window;
    const Word left = w.prefix(pos);
    const Word right = w.suffix(w.length() - pos - n);
    const auto& terms = p.relations()[rel].terms();
    for (std::size_t i = 1; i < terms.size(); ++i) {
      auto [slot, inserted] = work.try_emplace(concat(left, terms[i].word, right).packed());
      slot->second -= c * terms[i].coef;
      if (sgn(slot->second) == 0) work.erase(slot);
    }
  }
  return HomogPoly(f.degree(), std::move(out));
}

inline HomogPoly normal_form(const Presentation& p, const Word& w) { return normal_form(p, HomogPoly::monomial(w)); }

/// I(R)_m = Σ_i X^{⊗i} ⊗ R̄ ⊗ X^{⊗(m-N-i)}, built as I(R)_{m-1} ⊗ X + X^{⊗(m-N)} ⊗ R̄.
inline Subspace ideal_component(const Presentation& p, std::size_t m) {
  const std::size_t d = p.alphabet_size();
  if (m < p.N()) return Subspace(m);
  Subspace acc = p.relation_space();
  for (std::size_t deg = p.N() + 1; deg <= m; ++deg)
    acc = sum(tensor_with_words(acc, d, 0, 1), tensor_with_words(p.relation_space(), d, deg - p.N(), 0));
  return acc;
}

struct CriticalBranching {
  Word w1, w2, w3;
  std::size_t f = 0;  // w1·w2 = lm(f)
  std::size_t g = 0;  // w2·w3 = lm(g)

  Word source() const { return concat(w1, w2, w3); }
  friend bool operator==(const CriticalBranching&, const CriticalBranching&) = default;
};

/// All overlaps of a proper suffix of lm(f) with a proper prefix of lm(g),
/// sorted by descending source (ties: longer overlap first, then f, then g).
inline std::vector<CriticalBranching> critical_branchings(const Presentation& p) {
  const std::size_t n = p.N();
  std::vector<CriticalBranching> out;
  const auto& rel = p.relations();
  for (std::size_t f = 0; f < rel.size(); ++f) {
    const Word a = rel[f].leading_term().word;
    for (std::size_t g = 0; g < rel.size(); ++g) {
      const Word b = rel[g].leading_term().word;
      for (std::size_t ov = 1; ov < n; ++ov)
        if (a.suffix(ov) == b.prefix(ov)) out.push_back({a.prefix(n - ov), a.suffix(ov), b.suffix(n - ov), f, g});
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalBranching& x, const CriticalBranching& y) {
    const Word sx = x.source(), sy = y.source();
    if (sx.length() != sy.length()) return sx.length() < sy.length();
    if (sx.packed() != sy.packed()) return sx.packed() > sy.packed();
    if (x.f != y.f) return x.f < y.f;
    return x.g < y.g;
  });
  return out;
}

struct DegreeConfluence {
  std::size_t degree = 0;  // total degree N + m
  bool confluent = false;
  int k = 0;
};

struct ConfluenceReport {
  bool side_confluent = true;
  std::vector<DegreeConfluence> degrees;
  bool extra_condition = true;
  /// First total degree at which side-confluence fails.
  std::optional<std::size_t> failing_degree;
  /// First m (2 <= m <= N-1) at which the extra-condition inclusion fails.
  std::optional<std::size_t> extra_condition_failing_m;

  bool extra_confluent() const noexcept { return side_confluent && extra_condition; }
};

/// First m with (X^m ⊗ R̄) ∩ (R̄ ⊗ X^m) not included in X^{m-1} ⊗ R̄ ⊗ X.
inline std::optional<std::size_t> extra_condition_failure(const Presentation& p) {
  const std::size_t d = p.alphabet_size();
  const Subspace& r = p.relation_space();
  for (std::size_t m = 2; m + 1 <= p.N(); ++m) {
    Subspace cap = intersect(tensor_with_words(r, d, m, 0), tensor_with_words(r, d, 0, m));
    if (!tensor_with_words(r, d, m - 1, 1).includes(cap)) return m;
  }
  return std::nullopt;
}

inline bool check_extra_condition(const Presentation& p) { return !extra_condition_failure(p); }

/// Pairs (S ⊗ id^m, id^m ⊗ S) on X^(N+m) for m = 1 .. N-1.
inline std::pair<ReductionOperator, ReductionOperator> side_pair(const Presentation& p, std::size_t m) {
  return {p.S_at(0, p.N() + m), p.S_at(m, p.N() + m)};
}

/// Runs the confluence search in every internal degree N+1 .. 2N-1, then the
/// extra-condition. Throws UndeterminedError when a search reaches k_max.
inline ConfluenceReport check_side_confluence(const Presentation& p, int k_max) {
  ConfluenceReport report;
  for (std::size_t m = 1; m < p.N(); ++m) {
    auto [s1, s2] = side_pair(p, m);
    ConfluenceWitness w = confluence(s1, s2, k_max);
    report.degrees.push_back({p.N() + m, w.confluent, w.k});
    if (!w.confluent && report.side_confluent) {
      report.side_confluent = false;
      report.failing_degree = p.N() + m;
    }
  }
  report.extra_condition_failing_m = extra_condition_failure(p);
  report.extra_condition = !report.extra_condition_failing_m;
  return report;
}

struct BranchingVerdict {
  CriticalBranching branching;
  bool window_reducible = false;
};

/// For an extra-confluent presentation, the length-N window ending one letter
/// before the end of every critical-branching source must be reducible.
inline std::vector<BranchingVerdict> branching_suffix_property(const Presentation& p, int k_max) {
  ConfluenceReport report = check_side_confluence(p, k_max);
  if (!report.extra_confluent())
    throw PreconditionError("suffix-window property needs an extra-confluent presentation");
  std::vector<BranchingVerdict> out;
  for (const auto& b : critical_branchings(p)) {
    const Word s = b.source();
    const Word window = s.subword(s.length() - p.N() - 1, p.N());
    const bool reducible = p.relation_with_leading(window).has_value();
    if (!reducible)
      throw InvariantViolation("suffix window of source " + format_word(s, p.alphabet()) +
                               " is normal under the extra-condition");
    out.push_back({b, reducible});
  }
  return out;
}

}  // namespace koszulkit
