#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/graded_map.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/presentation.hpp"
#include "koszulkit/reduction_operator.hpp"
#include "koszulkit/subspace.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

/// kN for n = 2k, kN + 1 for n = 2k + 1.
constexpr std::size_t l_N(std::size_t N, std::size_t n) noexcept { return (n / 2) * N + (n % 2); }

/// Canonical basis of K_n^(m) = (normal words of length m - l_N(n)) ⊗ J_n:
/// the flattened vectors w·j for w descending and j running over the
/// echelon basis of J_n. The flattened family is again in reduced echelon
/// form, so a coordinate is the coefficient of the matching pivot word.
class KBasis {
public:
  KBasis() = default;

  KBasis(int n, std::size_t m, std::vector<Word> prefixes, const Subspace& j) : n_(n), m_(m), prefixes_(std::move(prefixes)) {
    vectors_.reserve(prefixes_.size() * j.dim());
    for (const auto& w : prefixes_)
      for (const auto& b : j.basis()) {
        pivots_.emplace(concat(w, b.leading_term().word).packed(), vectors_.size());
        vectors_.push_back(tensor_expand(w, b, Word{}));
        labels_.emplace_back(w, b.leading_term().word);
      }
  }

  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  const std::vector<HomogPoly>& vectors() const noexcept { return vectors_; }
  const std::vector<Word>& prefixes() const noexcept { return prefixes_; }
  /// (normal word, leading word of the J_n basis vector) for each basis vector.
  const std::vector<std::pair<Word, Word>>& labels() const noexcept { return labels_; }

  /// Coordinates of v; throws when v is not in K_n^(m).
  std::vector<Rational> coordinates(const HomogPoly& v) const {
    std::vector<Rational> c(dim());
    if (v.is_zero()) return c;
    if (v.degree() != m_) throw PreconditionError("vector of wrong degree for K_n^(m)");
    HomogPoly rebuilt(m_);
    for (const auto& t : v.terms()) {
      auto it = pivots_.find(t.word.packed());
      if (it == pivots_.end()) continue;
      c[it->second] = t.coef;
      rebuilt.axpy(t.coef, vectors_[it->second]);
    }
    if (!(rebuilt == v))
      throw InvariantViolation("vector is not in K_" + std::to_string(n_) + "^(" + std::to_string(m_) + ")");
    return c;
  }

  HomogPoly flatten(const std::vector<Rational>& coords) const {
    HomogPoly v(m_);
    for (std::size_t i = 0; i < coords.size(); ++i) v.axpy(coords[i], vectors_[i]);
    return v;
  }

private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<Word> prefixes_;
  std::vector<HomogPoly> vectors_;
  std::vector<std::pair<Word, Word>> labels_;
  std::unordered_map<std::uint64_t, std::size_t> pivots_;
};

/// The pair P_{n,m} = (F1, F2) of reduction operators on X^(m):
/// ker F1 = I(R)_{m-l(n)} ⊗ X^{l(n)}, and F2 = id when m < l(n+1), otherwise
/// ker F2 = X^{m-l(n+1)} ⊗ J_{n+1}.
struct ReductionPair {
  std::size_t n = 0;
  std::size_t m = 0;
  ReductionOperator f1;
  ReductionOperator f2;
  ConfluenceWitness witness;
};

struct CellResult {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t dim = 0;
  bool pass = false;
  /// First basis vector of K_n^(m) on which the identity fails, and the
  /// value of (∂h + h∂ - id) on it.
  std::optional<HomogPoly> witness;
  std::optional<HomogPoly> residual;
};

struct HomotopyReport {
  std::size_t n_max = 0;
  std::size_t m_max = 0;
  std::vector<CellResult> cells;
  double seconds = 0;

  bool all_pass() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return true;
  }
  const CellResult* first_failure() const {
    for (const auto& c : cells)
      if (!c.pass) return &c;
    return nullptr;
  }
};

struct ReductionRelationResult {
  /// meet(F1^{n,m}, F2^{n,m}) and join(F1^{n-1,m}, F2^{n-1,m}) agree on K_n^(m).
  bool relation = false;
  /// F1^{n,m} ∧ (F1^{n-1,m} ∨ F2^{n-1,m}) = F1^{n,m} ∧ F2^{n,m}; only for m >= l(n+1).
  std::optional<bool> meet_identity;
  /// F1^{n,m} commutes with F1^{n-1,m} ∨ F2^{n-1,m}.
  bool commute = false;
};

struct LatticeVerdict {
  std::string identity;
  std::string parameters;
  bool holds = false;
};

namespace detail {

/// Thread-safe memo table; values are computed outside the lock so that
/// recursive lookups do not deadlock. References stay valid for the life of
/// the table.
template <class Key, class Value>
class Memo {
public:
  template <class F>
  const Value& get(const Key& key, F&& compute) {
    {
      std::lock_guard lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return *it->second;
    }
    auto value = std::make_unique<Value>(compute());
    std::lock_guard lock(mutex_);
    auto [it, inserted] = table_.try_emplace(key, std::move(value));
    return *it->second;
  }

private:
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<Value>> table_;
};

}  // namespace detail

/// The normalised Koszul complex of a presentation together with its
/// reduction pairs and left-bound homotopy. Every derived object is computed
/// on demand and memoized.
class KoszulComplex {
public:
  explicit KoszulComplex(Presentation p, int k_max = 64) : p_(std::move(p)), k_max_(k_max) {}

  KoszulComplex(const KoszulComplex&) = delete;
  KoszulComplex& operator=(const KoszulComplex&) = delete;

  const Presentation& presentation() const noexcept { return p_; }
  int k_max() const noexcept { return k_max_; }
  std::size_t N() const noexcept { return p_.N(); }
  std::size_t l(std::size_t n) const noexcept { return l_N(p_.N(), n); }

  /// J_0 = K, J_1 = span(X), J_2 = R̄, J_n = ⋂_i X^{⊗i} ⊗ R̄ ⊗ X^{⊗(l(n)-N-i)}.
  const Subspace& j_space(std::size_t n) {
    return j_.get(n, [&] {
      const std::size_t d = p_.alphabet_size();
      const std::size_t len = l(n);
      if (len > kMaxWordLength) throw PreconditionError("J_n needs words longer than the supported maximum");
      if (n <= 1) return Subspace::full(d, len);
      if (n == 2) return p_.relation_space();
      Subspace acc = tensor_with_words(p_.relation_space(), d, 0, len - N());
      for (std::size_t i = 1; i + N() <= len && !acc.is_zero(); ++i)
        acc = intersect(acc, tensor_with_words(p_.relation_space(), d, i, len - N() - i));
      return acc;
    });
  }

  /// I(R)_m.
  const Subspace& ideal(std::size_t m) {
    return ideal_.get(m, [&] {
      if (m < N()) return Subspace(m);
      if (m == N()) return p_.relation_space();
      const std::size_t d = p_.alphabet_size();
      return sum(tensor_with_words(ideal(m - 1), d, 0, 1), tensor_with_words(p_.relation_space(), d, m - N(), 0));
    });
  }

  const std::vector<Word>& normal_words(std::size_t m) {
    return normal_words_.get(m, [&] { return p_.normal_words(m); });
  }

  /// Basis of K_n^(m); empty when l(n) > m.
  const KBasis& k_basis(std::size_t n, std::size_t m) {
    return k_basis_.get({n, m}, [&] {
      if (l(n) > m) return KBasis(static_cast<int>(n), m, {}, Subspace(l(n)));
      return KBasis(static_cast<int>(n), m, normal_words(m - l(n)), j_space(n));
    });
  }

  /// The smallest n >= 1 with J_n = 0 among l(n) <= max_len, if any.
  std::optional<std::size_t> first_vanishing_j(std::size_t max_len) {
    for (std::size_t n = 0; l(n) <= max_len; ++n)
      if (j_space(n).is_zero()) return n;
    return std::nullopt;
  }

  std::size_t default_n_max(std::size_t m_max) {
    std::size_t top = 0;
    while (l(top + 1) <= m_max) ++top;
    if (auto z = first_vanishing_j(m_max)) return std::min(*z, top);
    return top;
  }

  const ReductionPair& reduction_pair(std::size_t n, std::size_t m) {
    return pairs_.get({n, m}, [&] {
      if (l(n) > m) throw PreconditionError("reduction pair P_{n,m} needs l(n) <= m");
      const std::size_t d = p_.alphabet_size();
      ReductionPair pair;
      pair.n = n;
      pair.m = m;
      pair.f1 = ReductionOperator(d, tensor_with_words(ideal(m - l(n)), d, 0, l(n)));
      if (m < l(n + 1))
        pair.f2 = ReductionOperator::identity(d, m);
      else
        pair.f2 = ReductionOperator(d, tensor_with_words(j_space(n + 1), d, m - l(n + 1), 0));
      pair.witness = confluence(pair.f1, pair.f2, k_max_);
      if (!pair.witness.confluent)
        throw InvariantViolation("reduction pair P_{" + std::to_string(n) + "," + std::to_string(m) +
                                 "} is not confluent; the presentation is probably not side-confluent");
      return pair;
    });
  }

  /// ∂'_n : K_n^(m) -> K_{n-1}^(m) for n >= 1: normal form of the prefix of
  /// length m - l(n-1) of every term.
  const GradedMap& differential(std::size_t n, std::size_t m) {
    if (n == 0) throw PreconditionError("use augmentation() for n = 0");
    return differentials_.get({n, m}, [&] {
      const KBasis& src = k_basis(n, m);
      const KBasis& tgt = k_basis(n - 1, m);
      GradedMap out("d" + std::to_string(n), static_cast<int>(n), static_cast<int>(n) - 1, m, tgt.dim(), src.dim());
      const std::size_t cut = m - l(n - 1);
      std::unordered_map<std::uint64_t, HomogPoly> nf_cache;
      for (std::size_t c = 0; c < src.dim(); ++c) {
        HomogPoly image(m);
        for (const auto& t : src.vectors()[c].terms()) {
          const Word head = t.word.prefix(cut);
          const Word tail = t.word.suffix(m - cut);
          auto it = nf_cache.find(head.packed());
          if (it == nf_cache.end()) it = nf_cache.emplace(head.packed(), normal_form(p_, head)).first;
          image.axpy(t.coef, tensor_expand(Word{}, it->second, tail));
        }
        auto coords = tgt.coordinates(image);
        for (std::size_t r = 0; r < tgt.dim(); ++r) out.at(r, c) = std::move(coords[r]);
      }
      return out;
    });
  }

  /// ε' : K_0^(m) -> K, the identity in degree 0 and zero elsewhere.
  GradedMap augmentation(std::size_t m) {
    const std::size_t dim0 = k_basis(0, m).dim();
    GradedMap e("eps", 0, -1, m, m == 0 ? 1 : 0, dim0);
    if (m == 0) e.at(0, 0) = 1;
    return e;
  }

  /// h_{-1} : K -> K_0^(m), 1 ↦ 1 in degree 0.
  GradedMap unit(std::size_t m) {
    const std::size_t dim0 = k_basis(0, m).dim();
    GradedMap h("h-1", -1, 0, m, dim0, m == 0 ? 1 : 0);
    if (m == 0) h.at(0, 0) = 1;
    return h;
  }

  /// h'_n : K_n^(m) -> K_{n+1}^(m), the image of γ₁ under the
  /// representation of P_{n,m} restricted to K_n^(m).
  const GradedMap& left_bound(std::size_t n, std::size_t m) {
    return left_bounds_.get({n, m}, [&] {
      const KBasis& src = k_basis(n, m);
      const KBasis& tgt = k_basis(n + 1, m);
      GradedMap out("h" + std::to_string(n), static_cast<int>(n), static_cast<int>(n) + 1, m, tgt.dim(), src.dim());
      if (src.dim() == 0 || m < l(n + 1)) return out;
      const ReductionPair& pair = reduction_pair(n, m);
      const PairRepresentation rep = represent(pair.f1, pair.f2, pair.witness);
      for (std::size_t c = 0; c < src.dim(); ++c) {
        HomogPoly image = rep.gamma1.apply(src.vectors()[c]);
        std::vector<Rational> coords;
        try {
          coords = tgt.coordinates(image);
        } catch (const InvariantViolation&) {
          throw InvariantViolation("left bound h'_" + std::to_string(n) + " in degree " + std::to_string(m) +
                                   " leaves the normalised complex");
        }
        for (std::size_t r = 0; r < tgt.dim(); ++r) out.at(r, c) = std::move(coords[r]);
      }
      return out;
    });
  }

  /// Checks ∂'_{n+1} h'_n + h'_{n-1} ∂'_n = id on K_n^(m) (with h_{-1} ε' for n = 0).
  CellResult verify_cell(std::size_t n, std::size_t m) {
    const KBasis& basis = k_basis(n, m);
    CellResult cell{n, m, basis.dim(), true, std::nullopt, std::nullopt};
    if (basis.dim() == 0) return cell;
    GradedMap total = compose(differential(n + 1, m), left_bound(n, m));
    if (n == 0)
      total = total + compose(unit(m), augmentation(m));
    else
      total = total + compose(left_bound(n - 1, m), differential(n, m));
    const GradedMap id = identity_map(static_cast<int>(n), m, basis.dim());
    if (total == id) return cell;
    cell.pass = false;
    for (std::size_t c = 0; c < basis.dim(); ++c) {
      std::vector<Rational> col(basis.dim());
      bool differs = false;
      for (std::size_t r = 0; r < basis.dim(); ++r) {
        col[r] = total.at(r, c) - id.at(r, c);
        if (sgn(col[r]) != 0) differs = true;
      }
      if (differs) {
        cell.witness = basis.vectors()[c];
        cell.residual = basis.flatten(col);
        break;
      }
    }
    return cell;
  }

  /// Verifies every cell 0 <= n <= n_max, l(n) <= m <= m_max. Cells are
  /// independent given the memo tables, so they may run on several threads;
  /// the report order does not depend on the thread count.
  HomotopyReport verify_homotopy(std::size_t n_max, std::size_t m_max, unsigned jobs = 1) {
    const auto start = std::chrono::steady_clock::now();
    HomotopyReport report;
    report.n_max = n_max;
    report.m_max = m_max;
    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (std::size_t n = 0; n <= n_max; ++n)
      for (std::size_t m = l(n); m <= m_max; ++m) todo.emplace_back(n, m);
    report.cells.resize(todo.size());
    // Shared tables are filled first so that workers mostly read.
    for (std::size_t n = 0; n <= n_max + 1 && l(n) <= m_max; ++n) j_space(n);
    for (std::size_t m = 0; m <= m_max; ++m) ideal(m);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) return;
        try {
          report.cells[i] = verify_cell(todo[i].first, todo[i].second);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = todo.size();
          return;
        }
      }
    };
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }

  /// dim ker ∂'_n - dim im ∂'_{n+1} on K_n^(m) (with ε' for n = 0).
  long homology_dimension(std::size_t n, std::size_t m) {
    const std::size_t dim = k_basis(n, m).dim();
    const std::size_t out_rank = n == 0 ? rank(augmentation(m)) : rank(differential(n, m));
    const std::size_t in_rank = rank(differential(n + 1, m));
    return static_cast<long>(dim) - static_cast<long>(out_rank) - static_cast<long>(in_rank);
  }

  /// The reduction relation (r_{n,m}) and its two diagnostic sub-identities.
  ReductionRelationResult reduction_relation_check(std::size_t n, std::size_t m) {
    if (n == 0 || l(n) > m) throw PreconditionError("reduction relations need n >= 1 and l(n) <= m");
    const ReductionPair& cur = reduction_pair(n, m);
    const ReductionPair& prev = reduction_pair(n - 1, m);
    const ReductionOperator lower = meet(cur.f1, cur.f2);
    const ReductionOperator upper = join(prev.f1, prev.f2);
    ReductionRelationResult out;
    out.relation = true;
    for (const auto& b : k_basis(n, m).vectors())
      if (!(lower.apply(b) == upper.apply(b))) {
        out.relation = false;
        break;
      }
    if (m >= l(n + 1)) out.meet_identity = meet(cur.f1, upper) == lower;
    out.commute = true;
    for_each_word_descending(p_.alphabet_size(), m, [&](const Word& w) {
      if (!out.commute) return;
      const HomogPoly v = HomogPoly::monomial(w);
      if (!(cur.f1.apply(upper.apply(v)) == upper.apply(cur.f1.apply(v)))) out.commute = false;
    });
    return out;
  }

  /// The lattice identities among the S_i^(m) that the extra-condition
  /// implies, for every admissible index at degree m.
  std::vector<LatticeVerdict> extra_condition_lattice_checks(std::size_t m) {
    const ConfluenceReport& rep = confluence_report();
    if (!rep.extra_confluent()) throw PreconditionError("lattice checks need an extra-confluent presentation");
    std::vector<LatticeVerdict> out;
    const std::size_t N_ = N();
    if (m < N_) return out;
    std::vector<ReductionOperator> s;
    for (std::size_t i = 0; i + N_ <= m; ++i) s.push_back(p_.S_at(i, m));
    auto range = [&](std::size_t a, std::size_t b) {
      return std::vector<ReductionOperator>(s.begin() + static_cast<long>(a), s.begin() + static_cast<long>(b) + 1);
    };
    auto tag = [](std::initializer_list<std::pair<const char*, std::size_t>> kv) {
      std::string t;
      for (const auto& [k, v] : kv) t += (t.empty() ? "" : ",") + std::string(k) + "=" + std::to_string(v);
      return t;
    };

    if (m >= N_ + 2)
      for (std::size_t k = 2; k + 1 <= N_; ++k)
        for (std::size_t r = 0; r + k <= m - N_; ++r) {
          out.push_back({"join-span", tag({{"m", m}, {"r", r}, {"k", k}}),
                         join(s[r], s[r + k]) == join_all(range(r, r + k))});
          out.push_back({"meet-join", tag({{"m", m}, {"r", r}, {"k", k}}),
                         join(meet_all(range(r, r + k - 1)), s[r + k]) == join(s[r + k - 1], s[r + k])});
        }

    for (std::size_t n = 2; l(n + 1) <= m; ++n) {
      if (m < l(n + 2)) {
        const ReductionOperator lhs = join(meet_all(range(0, m - l(n + 1))), s[m - l(n)]);
        out.push_back({"window", tag({{"m", m}, {"n", n}}), lhs == join_all(range(m - l(n + 1), m - l(n)))});
      } else {
        const ReductionOperator t = meet_all(range(m - l(n + 2) + 1, m - l(n + 1)));
        out.push_back({"bound-step", tag({{"m", m}, {"n", n}}),
                       join(t, reduction_pair_f2(n - 1, m)) == reduction_pair_f2(n, m)});
      }
    }

    for (std::size_t n = 1; l(n + 1) <= m; ++n) {
      const ReductionOperator f1 = reduction_pair_f1(n, m);
      const ReductionOperator upper = join(reduction_pair_f1(n - 1, m), reduction_pair_f2(n - 1, m));
      out.push_back({"meet-identity", tag({{"m", m}, {"n", n}}),
                     meet(f1, upper) == meet(f1, reduction_pair_f2(n, m))});
    }
    return out;
  }

  /// Side-confluence and extra-condition of the presentation (memoized).
  const ConfluenceReport& confluence_report() {
    return report_.get(0, [&] { return check_side_confluence(p_, k_max_); });
  }

private:
  // The operators of P_{n,m} without the confluence search.
  ReductionOperator reduction_pair_f1(std::size_t n, std::size_t m) {
    const std::size_t d = p_.alphabet_size();
    return {d, tensor_with_words(ideal(m - l(n)), d, 0, l(n))};
  }
  ReductionOperator reduction_pair_f2(std::size_t n, std::size_t m) {
    const std::size_t d = p_.alphabet_size();
    if (m < l(n + 1)) return ReductionOperator::identity(d, m);
    return {d, tensor_with_words(j_space(n + 1), d, m - l(n + 1), 0)};
  }

  using Cell = std::pair<std::size_t, std::size_t>;

  Presentation p_;
  int k_max_;
  detail::Memo<std::size_t, Subspace> j_;
  detail::Memo<std::size_t, Subspace> ideal_;
  detail::Memo<std::size_t, std::vector<Word>> normal_words_;
  detail::Memo<Cell, KBasis> k_basis_;
  detail::Memo<Cell, ReductionPair> pairs_;
  detail::Memo<Cell, GradedMap> differentials_;
  detail::Memo<Cell, GradedMap> left_bounds_;
  detail::Memo<int, ConfluenceReport> report_;
};

}  // namespace koszulkit
