#pragma once

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

#include "psiherm/field.hpp"

namespace psiherm {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <typename S>
bool is_zero_scalar(const S& x) {
  return x == S(0);
}

// ---------------------------------------------------------------------------
// Gaussian elimination over an exact field.  Pivot rule: first nonzero in scan
// order, deterministic.  Row updates skip rows that are already zero in the
// pivot column, which keeps permutation-like matrices near-linear.
// ---------------------------------------------------------------------------

/// Reduces M in place to row echelon form; returns the pivot columns.
template <typename S>
std::vector<int> row_echelon_inplace(Mat<S>& m) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero_scalar(m(i, c))) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r) m.row(pr).swap(m.row(r));
    const S inv = S(1) / m(r, c);
    for (int j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero_scalar(m(i, c))) continue;
      const S f = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename S>
int rank_of(Mat<S> m) {
  return static_cast<int>(row_echelon_inplace(m).size());
}

/// Indices of a column basis of the column space (pivot columns of the input).
template <typename S>
std::vector<int> pivot_columns(Mat<S> m) {
  return row_echelon_inplace(m);
}

template <typename S>
S det_of(Mat<S> m) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::logic_error("det of non-square matrix");
  S det = S(1);
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero_scalar(m(i, c))) { pr = i; break; }
    if (pr < 0) return S(0);
    if (pr != c) {
      m.row(pr).swap(m.row(c));
      det = -det;
    }
    det = det * m(c, c);
    const S inv = S(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero_scalar(m(i, c))) continue;
      const S f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

template <typename S>
std::optional<Mat<S>> inverse_of(const Mat<S>& m) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::logic_error("inverse of non-square matrix");
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<S>::Identity(n, n);
  const auto pivots = row_echelon_inplace(aug);
  if (static_cast<int>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
  return Mat<S>(aug.rightCols(n));
}

/// Solves A x = b; empty when inconsistent or A rank-deficient on b.
template <typename S>
std::optional<Vec<S>> solve_linear(const Mat<S>& a, const Vec<S>& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Mat<S> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  row_echelon_inplace(aug);
  Vec<S> x = Vec<S>::Zero(cols);
  for (int i = rows - 1; i >= 0; --i) {
    int lead = -1;
    for (int j = 0; j < cols; ++j)
      if (!is_zero_scalar(aug(i, j))) { lead = j; break; }
    if (lead < 0) {
      if (!is_zero_scalar(aug(i, cols))) return std::nullopt;  // 0 = nonzero
      continue;
    }
    x(lead) = aug(i, cols);  // echelon rows are normalized and fully reduced
  }
  // verify: guards against underdetermined systems silently picking x
  if (a * x != b) return std::nullopt;
  return x;
}

// ---------------------------------------------------------------------------
// Congruence diagonalization of a symmetric matrix (char != 2): symmetric
// Gram-Schmidt with the standard fix when a diagonal pivot vanishes.
// ---------------------------------------------------------------------------

template <typename S>
struct Diagonalization {
  std::vector<S> diagonal;  // zero entries mark the radical
  Mat<S> transform;         // transform^T * G * transform = diag(diagonal)
};

template <typename S>
Diagonalization<S> congruent_diagonalize(const Mat<S>& gram) {
  const int n = static_cast<int>(gram.rows());
  if (n != gram.cols()) throw std::logic_error("diagonalize: non-square Gram");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i))
        throw input_error("diagonalize: matrix not symmetric at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");

  Mat<S> m = gram;
  Mat<S> t = Mat<S>::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    if (is_zero_scalar(m(k, k))) {
      int dj = -1, oj = -1;
      for (int j = k + 1; j < n; ++j) {
        if (dj < 0 && !is_zero_scalar(m(j, j))) dj = j;
        if (oj < 0 && !is_zero_scalar(m(k, j))) oj = j;
      }
      if (dj >= 0) {
        m.row(k).swap(m.row(dj));
        m.col(k).swap(m.col(dj));
        t.col(k).swap(t.col(dj));
      } else if (oj >= 0) {
        // m(oj,oj) = 0 too, so afterwards m(k,k) = 2 m(k,oj) != 0
        m.col(k) += m.col(oj);
        m.row(k) += m.row(oj);
        t.col(k) += t.col(oj);
      } else {
        continue;  // row k orthogonal to everything remaining: radical
      }
    }
    const S inv = S(1) / m(k, k);
    for (int j = k + 1; j < n; ++j) {
      if (is_zero_scalar(m(k, j))) continue;
      const S f = m(k, j) * inv;
      m.col(j) -= f * m.col(k);
      m.row(j) -= f * m.row(k);
      t.col(j) -= f * t.col(k);
    }
  }
  Diagonalization<S> out;
  out.diagonal.reserve(n);
  for (int i = 0; i < n; ++i) out.diagonal.push_back(m(i, i));
  out.transform = std::move(t);
  return out;
}

/// (positives, negatives, zeros) of a diagonalized form.  Only meaningful for
/// ordered fields; instantiated for Rational via field_traits<S>::sign.
template <typename S>
std::tuple<int, int, int> inertia_of_diagonal(const std::vector<S>& diag) {
  int pos = 0, neg = 0, zero = 0;
  for (const auto& d : diag) {
    const int s = field_traits<S>::sign(d);
    if (s > 0) ++pos;
    else if (s < 0) ++neg;
    else ++zero;
  }
  return {pos, neg, zero};
}

}  // namespace psiherm
