#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"
#include "koszulkit/word.hpp"

namespace koszulkit {

/// An endomorphism of span(X^(m)) given by the images of basis words.
/// Words without a stored image map to themselves or to zero, depending on
/// the default.
class LinearMap {
public:
  enum class Default { Identity, Zero };

  LinearMap() = default;
  LinearMap(std::size_t alphabet_size, std::size_t degree, Default dflt)
      : alphabet_size_(alphabet_size), degree_(degree), default_(dflt) {}

  static LinearMap identity(std::size_t alphabet_size, std::size_t degree) {
    return LinearMap(alphabet_size, degree, Default::Identity);
  }
  static LinearMap zero(std::size_t alphabet_size, std::size_t degree) {
    return LinearMap(alphabet_size, degree, Default::Zero);
  }

  /// Tabulates f on every basis word.
  template <class F>
  static LinearMap from_function(std::size_t alphabet_size, std::size_t degree, F&& f) {
    LinearMap m(alphabet_size, degree, Default::Zero);
    for_each_word_descending(alphabet_size, degree, [&](const Word& w) { m.set_image(w, f(w)); });
    return m;
  }

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t degree() const noexcept { return degree_; }
  Default default_kind() const noexcept { return default_; }

  void set_image(const Word& w, HomogPoly image) {
    if (w.length() != degree_ || image.degree() != degree_)
      throw PreconditionError("image of wrong degree for a map of degree " + std::to_string(degree_));
    const bool is_default = default_ == Default::Identity
                                ? (image.size() == 1 && image.terms()[0].word == w && image.terms()[0].coef == 1)
                                : image.is_zero();
    if (is_default) {
      images_.erase(w.packed());
    } else {
      images_.insert_or_assign(w.packed(), std::move(image));
    }
  }

  HomogPoly image(const Word& w) const {
    auto it = images_.find(w.packed());
    if (it != images_.end()) return it->second;
    return default_ == Default::Identity ? HomogPoly::monomial(w) : HomogPoly(degree_);
  }

  /// Words whose image differs from the default.
  std::size_t stored_images() const noexcept { return images_.size(); }

  template <class F>
  void for_each_stored(F&& f) const {
    for (const auto& [packed, img] : images_) f(Word::from_packed(packed, degree_), img);
  }

  HomogPoly apply(const HomogPoly& v) const {
    if (v.degree() != degree_) throw PreconditionError("applying a map to a vector of the wrong degree");
    std::vector<Term> out;
    out.reserve(v.size());
    for (const auto& t : v.terms()) {
      auto it = images_.find(t.word.packed());
      if (it == images_.end()) {
        if (default_ == Default::Identity) out.push_back(t);
        continue;
      }
      for (const auto& s : it->second.terms()) out.push_back({s.word, t.coef * s.coef});
    }
    return HomogPoly(degree_, std::move(out));
  }

  HomogPoly operator()(const HomogPoly& v) const { return apply(v); }

  bool operator==(const LinearMap& o) const {
    if (degree_ != o.degree_ || alphabet_size_ != o.alphabet_size_) return false;
    if (default_ == o.default_ && images_.size() == o.images_.size()) {
      for (const auto& [w, img] : images_) {
        auto it = o.images_.find(w);
        if (it == o.images_.end() || !(it->second == img)) return false;
      }
      return true;
    }
    bool same = true;
    for_each_word_descending(alphabet_size_, degree_, [&](const Word& w) {
      if (same && !(image(w) == o.image(w))) same = false;
    });
    return same;
  }

  /// First basis word on which the two maps differ.
  std::optional<Word> first_difference(const LinearMap& o) const {
    std::optional<Word> out;
    for_each_word_descending(alphabet_size_, degree_, [&](const Word& w) {
      if (!out && !(image(w) == o.image(w))) out = w;
    });
    return out;
  }

private:
  std::size_t alphabet_size_ = 0;
  std::size_t degree_ = 0;
  Default default_ = Default::Identity;
  std::unordered_map<std::uint64_t, HomogPoly> images_;
};

/// a ∘ b
inline LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (a.degree() != b.degree()) throw PreconditionError("degree mismatch in composition");
  return LinearMap::from_function(a.alphabet_size(), a.degree(),
                                  [&](const Word& w) { return a.apply(b.image(w)); });
}

inline LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  if (a.degree() != b.degree()) throw PreconditionError("degree mismatch in map sum");
  return LinearMap::from_function(a.alphabet_size(), a.degree(),
                                  [&](const Word& w) { return a.image(w) + b.image(w); });
}

inline LinearMap operator-(const LinearMap& a, const LinearMap& b) {
  if (a.degree() != b.degree()) throw PreconditionError("degree mismatch in map difference");
  return LinearMap::from_function(a.alphabet_size(), a.degree(),
                                  [&](const Word& w) { return a.image(w) - b.image(w); });
}

/// Projector test on every basis word.
inline bool is_projector(const LinearMap& t) {
  bool ok = true;
  for_each_word_descending(t.alphabet_size(), t.degree(), [&](const Word& w) {
    if (!ok) return;
    HomogPoly tw = t.image(w);
    if (!(t.apply(tw) == tw)) ok = false;
  });
  return ok;
}

/// Every basis word maps to itself, to zero, or to a vector with a strictly
/// smaller leading word.
inline bool has_strict_descent(const LinearMap& t) {
  bool ok = true;
  for_each_word_descending(t.alphabet_size(), t.degree(), [&](const Word& w) {
    if (!ok) return;
    HomogPoly tw = t.image(w);
    if (tw.is_zero()) return;
    if (tw == HomogPoly::monomial(w)) return;
    if (!(tw.leading_term().word.packed() < w.packed())) ok = false;
  });
  return ok;
}

}  // namespace koszulkit
