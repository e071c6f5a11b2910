#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/linear_map.hpp"
#include "koszulkit/subspace.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

/// A projector of span(X^(m)) sending every word to itself or to a vector
/// with a strictly smaller leading word. Reduction operators correspond
/// one-to-one with subspaces through their kernels, so the kernel is the
/// stored representation: a pivot word p maps to p minus its kernel basis
/// vector and every other word is fixed.
class ReductionOperator {
public:
  ReductionOperator() = default;

  ReductionOperator(std::size_t alphabet_size, Subspace kernel)
      : alphabet_size_(alphabet_size), kernel_(std::move(kernel)) {}

  static ReductionOperator identity(std::size_t alphabet_size, std::size_t degree) {
    return {alphabet_size, Subspace::zero(degree)};
  }
  static ReductionOperator zero(std::size_t alphabet_size, std::size_t degree) {
    return {alphabet_size, Subspace::full(alphabet_size, degree)};
  }

  /// Validates an arbitrary map and converts it. Throws if it is not a
  /// reduction operator.
  static ReductionOperator from_map(const LinearMap& t) {
    if (!has_strict_descent(t)) throw InvariantViolation("map violates strict descent");
    if (!is_projector(t)) throw InvariantViolation("map is not a projector");
    std::vector<HomogPoly> kernel;
    for_each_word_descending(t.alphabet_size(), t.degree(), [&](const Word& w) {
      HomogPoly tw = t.image(w);
      if (!(tw == HomogPoly::monomial(w))) kernel.push_back(HomogPoly::monomial(w) - tw);
    });
    return {t.alphabet_size(), Subspace::from_reduced_basis(t.degree(), std::move(kernel))};
  }

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t degree() const noexcept { return kernel_.degree(); }
  const Subspace& kernel() const noexcept { return kernel_; }

  HomogPoly image(const Word& w) const { return kernel_.reduce_word(w); }
  HomogPoly apply(const HomogPoly& v) const { return kernel_.reduce(v); }
  HomogPoly operator()(const HomogPoly& v) const { return apply(v); }

  bool fixes(const Word& w) const { return !kernel_.is_pivot(w); }
  bool is_identity() const noexcept { return kernel_.is_zero(); }

  LinearMap to_map() const {
    LinearMap m = LinearMap::identity(alphabet_size_, degree());
    for (const auto& b : kernel_.basis()) {
      const Word p = b.leading_term().word;
      m.set_image(p, kernel_.reduce_word(p));
    }
    return m;
  }

  friend bool operator==(const ReductionOperator& a, const ReductionOperator& b) {
    return a.alphabet_size_ == b.alphabet_size_ && a.kernel_ == b.kernel_;
  }

private:
  std::size_t alphabet_size_ = 0;
  Subspace kernel_;
};

/// The unique reduction operator with the given kernel.
inline ReductionOperator theta_inv(const Subspace& w, std::size_t alphabet_size) {
  return {alphabet_size, w};
}

inline const Subspace& theta(const ReductionOperator& t) { return t.kernel(); }

inline void check_same_degree(const ReductionOperator& a, const ReductionOperator& b) {
  if (a.degree() != b.degree() || a.alphabet_size() != b.alphabet_size())
    throw PreconditionError("reduction operators of different degrees");
}

/// Lower bound: kernel is the sum of kernels.
inline ReductionOperator meet(const ReductionOperator& a, const ReductionOperator& b) {
  check_same_degree(a, b);
  return {a.alphabet_size(), sum(a.kernel(), b.kernel())};
}

/// Upper bound: kernel is the intersection of kernels.
inline ReductionOperator join(const ReductionOperator& a, const ReductionOperator& b) {
  check_same_degree(a, b);
  return {a.alphabet_size(), intersect(a.kernel(), b.kernel())};
}

inline ReductionOperator meet_all(const std::vector<ReductionOperator>& ops) {
  if (ops.empty()) throw PreconditionError("meet of an empty family");
  Subspace k = ops.front().kernel();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    check_same_degree(ops.front(), ops[i]);
    k = sum(k, ops[i].kernel());
  }
  return {ops.front().alphabet_size(), std::move(k)};
}

inline ReductionOperator join_all(const std::vector<ReductionOperator>& ops) {
  if (ops.empty()) throw PreconditionError("join of an empty family");
  Subspace k = ops.front().kernel();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    check_same_degree(ops.front(), ops[i]);
    k = intersect(k, ops[i].kernel());
  }
  return {ops.front().alphabet_size(), std::move(k)};
}

/// a ⪯ b iff ker(b) ⊆ ker(a).
inline bool leq(const ReductionOperator& a, const ReductionOperator& b) {
  check_same_degree(a, b);
  return a.kernel().includes(b.kernel());
}

/// ⟨a, b⟩^k: the alternating composition of k factors whose rightmost factor
/// is b (k = 1 gives b, k = 2 gives a∘b, k = 3 gives b∘a∘b).
template <class Op>
HomogPoly alternating_apply(const Op& a, const Op& b, int k, HomogPoly v) {
  if (k < 1) throw PreconditionError("alternating product needs k >= 1");
  for (int j = 1; j <= k; ++j) v = (j % 2 == 1) ? b.apply(v) : a.apply(v);
  return v;
}

template <class Op>
LinearMap alternating_product(const Op& a, const Op& b, int k) {
  if (k < 1) throw PreconditionError("alternating product needs k >= 1");
  if (a.degree() != b.degree()) throw PreconditionError("operators of different degrees");
  return LinearMap::from_function(a.alphabet_size(), a.degree(), [&](const Word& w) {
    return alternating_apply(a, b, k, HomogPoly::monomial(w));
  });
}

struct ConfluenceWitness {
  bool confluent = false;
  /// Minimal k with ⟨T1,T2⟩^k = ⟨T2,T1⟩^k when confluent; otherwise the
  /// index at which both alternating sequences had stabilised.
  int k = 0;
  /// The common value ⟨T1,T2⟩^k (only meaningful when confluent).
  LinearMap limit;
};

/// Searches k = 1, 2, ... for ⟨T1,T2⟩^k = ⟨T2,T1⟩^k. Reports non-confluence
/// only once both sequences have stopped changing for two consecutive steps.
/// Throws UndeterminedError when neither happens by k_max.
inline ConfluenceWitness confluence(const ReductionOperator& t1, const ReductionOperator& t2, int k_max) {
  check_same_degree(t1, t2);
  if (k_max < 1) throw PreconditionError("k_max must be positive");
  const std::vector<Word> words = all_words_descending(t1.alphabet_size(), t1.degree());
  // a[i] = ⟨T1,T2⟩^k(w_i), b[i] = ⟨T2,T1⟩^k(w_i)
  std::vector<HomogPoly> a, b;
  a.reserve(words.size());
  b.reserve(words.size());
  for (const auto& w : words) {
    a.push_back(t2.image(w));
    b.push_back(t1.image(w));
  }
  int unchanged_a = 0, unchanged_b = 0;
  for (int k = 1;; ++k) {
    bool equal = true;
    for (std::size_t i = 0; i < words.size() && equal; ++i) equal = a[i] == b[i];
    if (equal) {
      ConfluenceWitness out{true, k, LinearMap::zero(t1.alphabet_size(), t1.degree())};
      for (std::size_t i = 0; i < words.size(); ++i) out.limit.set_image(words[i], std::move(a[i]));
      return out;
    }
    if (unchanged_a >= 2 && unchanged_b >= 2) return {false, k, LinearMap{}};
    if (k >= k_max)
      throw UndeterminedError("confluence undetermined at k_max = " + std::to_string(k_max));
    // Prepend the (k+1)-th factor: T2 when k+1 is odd for ⟨T1,T2⟩, T1 otherwise.
    const ReductionOperator& next_a = ((k + 1) % 2 == 1) ? t2 : t1;
    const ReductionOperator& next_b = ((k + 1) % 2 == 1) ? t1 : t2;
    bool changed_a = false, changed_b = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      HomogPoly na = next_a.apply(a[i]);
      if (!(na == a[i])) {
        changed_a = true;
        a[i] = std::move(na);
      }
      HomogPoly nb = next_b.apply(b[i]);
      if (!(nb == b[i])) {
        changed_b = true;
        b[i] = std::move(nb);
      }
    }
    unchanged_a = changed_a ? 0 : unchanged_a + 1;
    unchanged_b = changed_b ? 0 : unchanged_b + 1;
  }
}

/// Images of σ, γ₁, γ₂ and λ of the confluence algebra of degree k under the
/// representation s₁ ↦ T1, s₂ ↦ T2.
struct PairRepresentation {
  int k = 0;
  LinearMap sigma;
  LinearMap gamma1;
  LinearMap gamma2;
  LinearMap lambda;
};

namespace detail {

/// (id - outer) · Σ_{i odd, 1 ≤ i ≤ k-1} ⟨outer, inner⟩^i, whose rightmost
/// factor is inner.
inline LinearMap bound_element(const ReductionOperator& inner, const ReductionOperator& outer, int k) {
  return LinearMap::from_function(inner.alphabet_size(), inner.degree(), [&](const Word& w) {
    HomogPoly acc(w.length());
    HomogPoly cur = HomogPoly::monomial(w);
    for (int i = 1; i <= k - 1; ++i) {
      cur = (i % 2 == 1) ? inner.apply(cur) : outer.apply(cur);
      if (i % 2 == 1) acc += cur;
    }
    return acc - outer.apply(acc);
  });
}

}  // namespace detail

inline LinearMap eval_gamma1(const ReductionOperator& t1, const ReductionOperator& t2, int k) {
  check_same_degree(t1, t2);
  return detail::bound_element(t1, t2, k);
}

inline LinearMap eval_gamma2(const ReductionOperator& t1, const ReductionOperator& t2, int k) {
  check_same_degree(t1, t2);
  return detail::bound_element(t2, t1, k);
}

inline LinearMap eval_sigma(const ReductionOperator& t1, const ReductionOperator& t2, int k) {
  return alternating_product(t1, t2, k);
}

inline LinearMap eval_lambda(const ReductionOperator& t1, const ReductionOperator& t2, int k) {
  LinearMap bounds = eval_sigma(t1, t2, k) + eval_gamma1(t1, t2, k) + eval_gamma2(t1, t2, k);
  return LinearMap::identity(t1.alphabet_size(), t1.degree()) - bounds;
}

/// Builds the representation at the witness k, checking that σ maps to
/// T1∧T2 and σ+γ₁+γ₂ to T1∨T2. When the check fails the exponent is raised
/// by one, up to witness.k + 2.
inline PairRepresentation represent(const ReductionOperator& t1, const ReductionOperator& t2,
                                    const ConfluenceWitness& witness) {
  check_same_degree(t1, t2);
  if (!witness.confluent) throw PreconditionError("representation of a non-confluent pair");
  const LinearMap lower = meet(t1, t2).to_map();
  const LinearMap upper = join(t1, t2).to_map();
  if (!(witness.limit == lower))
    throw InvariantViolation("representation identities violated for k = " + std::to_string(witness.k) +
                             ": sigma differs from the lower bound");
  for (int k = witness.k; k <= witness.k + 2; ++k) {
    LinearMap g1 = eval_gamma1(t1, t2, k);
    LinearMap g2 = eval_gamma2(t1, t2, k);
    LinearMap bounds = witness.limit + g1 + g2;
    if (bounds == upper) {
      LinearMap lambda = LinearMap::identity(t1.alphabet_size(), t1.degree()) - bounds;
      return {k, witness.limit, std::move(g1), std::move(g2), std::move(lambda)};
    }
  }
  throw InvariantViolation("representation identities violated for k = " + std::to_string(witness.k) +
                           " .. " + std::to_string(witness.k + 2));
}

/// ⟨id - T1, id - T2⟩^k for a pair confluent at k. Checks that the two
/// bracket orders agree and that the result equals
///   id + Σ_{i=1}^{k-1} (-1)^i (⟨T1,T2⟩^i + ⟨T2,T1⟩^i) + (-1)^k ⟨T1,T2⟩^k.
inline LinearMap complemented_alternating(const ReductionOperator& t1, const ReductionOperator& t2, int k) {
  check_same_degree(t1, t2);
  if (k < 1) throw PreconditionError("k must be positive");
  const std::size_t d = t1.alphabet_size();
  const std::size_t m = t1.degree();
  auto complement = [](const ReductionOperator& t) {
    return [&t](const HomogPoly& v) { return v - t.apply(v); };
  };
  auto c1 = complement(t1);
  auto c2 = complement(t2);
  auto alternate = [&](auto&& first, auto&& second, HomogPoly v) {
    for (int j = 1; j <= k; ++j) v = (j % 2 == 1) ? second(v) : first(v);
    return v;
  };
  bool ok = true;
  std::string failure;
  LinearMap lambda = LinearMap::from_function(d, m, [&](const Word& w) {
    HomogPoly one = HomogPoly::monomial(w);
    HomogPoly l12 = alternate(c1, c2, one);
    HomogPoly l21 = alternate(c2, c1, one);
    if (ok && !(l12 == l21)) {
      ok = false;
      failure = "bracket orders disagree";
    }
    HomogPoly expansion = one;
    HomogPoly a = one, b = one;  // ⟨T1,T2⟩^i(w), ⟨T2,T1⟩^i(w)
    for (int i = 1; i <= k; ++i) {
      a = (i % 2 == 1) ? t2.apply(a) : t1.apply(a);
      b = (i % 2 == 1) ? t1.apply(b) : t2.apply(b);
      const Rational sign = (i % 2 == 1) ? -1 : 1;
      if (i < k) {
        expansion.axpy(sign, a);
        expansion.axpy(sign, b);
      } else {
        expansion.axpy(sign, a);
      }
    }
    if (ok && !(expansion == l12)) {
      ok = false;
      failure = "alternating expansion mismatch";
    }
    return l12;
  });
  if (!ok) throw InvariantViolation("complemented alternating product: " + failure);
  return lambda;
}

}  // namespace koszulkit
