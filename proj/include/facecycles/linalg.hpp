#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "facecycles/rational.hpp"

namespace fc {

using RowVector = std::vector<Rational>;
using Matrix = std::vector<RowVector>;  // row-major, rows may be empty

inline Rational dot(const RowVector& a, const RowVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Row rank by exact Gaussian elimination. Destroys its copy of the input.
inline int matrix_rank(Matrix m) {
  if (m.empty()) return 0;
  std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col].is_zero()) continue;
      Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
  }
  return static_cast<int>(row);
}

/// Basis of the right nullspace {x : m x = 0}, one vector per free column.
inline std::vector<RowVector> nullspace(Matrix m, std::size_t cols) {
  std::vector<int> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    Rational inv = m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] /= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;

  std::vector<RowVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RowVector v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
      v[pivot_col_of_row[r]] = -m[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = rhs exactly. Returns nullopt when the system is
/// inconsistent; when underdetermined, free variables are set to zero.
inline std::optional<RowVector> solve(Matrix m, RowVector rhs, std::size_t cols) {
  std::vector<int> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    std::swap(rhs[row], rhs[pivot]);
    Rational inv = m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] /= inv;
    rhs[row] /= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
      rhs[r] -= f * rhs[row];
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++row;
  }
  for (std::size_t r = row; r < m.size(); ++r)
    if (!rhs[r].is_zero()) return std::nullopt;
  RowVector x(cols, Rational(0));
  for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
    x[pivot_col_of_row[r]] = rhs[r];
  return x;
}

inline void require_same_length(const std::vector<Point>& points) {
  for (const Point& p : points)
    if (p.size() != points.front().size()) throw MixedDimensions();
}

/**
 * One less than the maximum number of affinely independent points among the
 * inputs, by exact elimination on difference vectors from the first point.
 */
inline int affine_dimension(const std::vector<Point>& points) {
  if (points.empty()) throw InputError("affine_dimension of empty point set");
  require_same_length(points);
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RowVector d(points[0].size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[i][c] - points[0][c];
    diffs.push_back(std::move(d));
  }
  return matrix_rank(std::move(diffs));
}

/// affine_dimension restricted to a subset of point indices.
inline int affine_dimension_of(const std::vector<Point>& points,
                               const std::vector<int>& subset) {
  std::vector<Point> sel;
  sel.reserve(subset.size());
  for (int i : subset) sel.push_back(points[i]);
  return affine_dimension(sel);
}

/**
 * A point scaled to integer coordinates: p = num / den with den > 0.
 * Lets sidedness predicates run on pure integer arithmetic.
 */
struct ScaledPoint {
  std::vector<Integer> num;
  Integer den;

  static ScaledPoint from(const Point& p) {
    Integer den = 1;
    for (const Rational& c : p) den = lcm(den, c.denominator());
    std::vector<Integer> num;
    num.reserve(p.size());
    for (const Rational& c : p) num.push_back(c.numerator() * (den / c.denominator()));
    return {std::move(num), std::move(den)};
  }
};

}  // namespace fc
