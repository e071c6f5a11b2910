#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/error.hpp"
#include "koszulkit/homog_poly.hpp"

namespace koszulkit {

/// A linear map between graded pieces K_source^(m) -> K_target^(m), stored as
/// a dense exact matrix relative to the canonical bases of both pieces.
/// Homological index -1 stands for the ground field K.
struct GradedMap {
  std::string name;
  int source_n = 0;
  int target_n = 0;
  std::size_t m = 0;
  std::size_t rows = 0;  // target dimension
  std::size_t cols = 0;  // source dimension
  std::vector<std::vector<Rational>> entries;

  GradedMap() = default;
  GradedMap(std::string name_, int src, int tgt, std::size_t m_, std::size_t rows_, std::size_t cols_)
      : name(std::move(name_)), source_n(src), target_n(tgt), m(m_), rows(rows_), cols(cols_),
        entries(rows_, std::vector<Rational>(cols_)) {}

  Rational& at(std::size_t r, std::size_t c) { return entries[r][c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return entries[r][c]; }

  bool is_zero() const {
    for (const auto& row : entries)
      for (const auto& x : row)
        if (sgn(x) != 0) return false;
    return true;
  }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
  }
};

inline GradedMap identity_map(int n, std::size_t m, std::size_t dim) {
  GradedMap id("id", n, n, m, dim, dim);
  for (std::size_t i = 0; i < dim; ++i) id.at(i, i) = 1;
  return id;
}

/// a ∘ b
inline GradedMap compose(const GradedMap& a, const GradedMap& b) {
  if (a.cols != b.rows) throw PreconditionError("composing " + a.name + " with " + b.name + ": size mismatch");
  GradedMap out(a.name + "*" + b.name, b.source_n, a.target_n, a.m, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Rational& x = a.at(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (sgn(b.at(k, j)) != 0) out.at(i, j) += x * b.at(k, j);
    }
  return out;
}

inline GradedMap operator+(const GradedMap& a, const GradedMap& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw PreconditionError("adding maps of different shapes");
  GradedMap out(a.name + "+" + b.name, a.source_n, a.target_n, a.m, a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

/// Exact rank by Gaussian elimination.
inline std::size_t rank(const GradedMap& a) {
  auto m = a.entries;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t p = r;
    while (p < a.rows && sgn(m[p][c]) == 0) ++p;
    if (p == a.rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < a.cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace koszulkit
