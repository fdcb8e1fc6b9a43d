#pragma once

#include <cstddef>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/linalg.hpp"

namespace psiherm {

/// Rectangular matrix with entries in a structure-constant algebra, stored
/// row-major.  Every module, idempotent, Gram matrix and module map in the
/// library is one of these.
template <typename S>
struct RingMat {
  AlgebraPtr<S> ring;
  int rows = 0;
  int cols = 0;
  std::vector<Vec<S>> ent;  // ent[i*cols + j], each of length ring->dim

  RingMat() = default;
  RingMat(AlgebraPtr<S> r, int nrows, int ncols)
      : ring(std::move(r)),
        rows(nrows),
        cols(ncols),
        ent(static_cast<std::size_t>(nrows) * ncols, Vec<S>::Zero(ring->dim)) {}

  Vec<S>& at(int i, int j) { return ent[static_cast<std::size_t>(i) * cols + j]; }
  const Vec<S>& at(int i, int j) const { return ent[static_cast<std::size_t>(i) * cols + j]; }
};

template <typename S>
bool operator==(const RingMat<S>& a, const RingMat<S>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t k = 0; k < a.ent.size(); ++k)
    if (a.ent[k] != b.ent[k]) return false;
  return true;
}

template <typename S>
bool operator!=(const RingMat<S>& a, const RingMat<S>& b) {
  return !(a == b);
}

template <typename S>
RingMat<S> rm_zero(const AlgebraPtr<S>& ring, int rows, int cols) {
  return RingMat<S>(ring, rows, cols);
}

template <typename S>
RingMat<S> rm_identity(const AlgebraPtr<S>& ring, int n) {
  RingMat<S> m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring->unit;
  return m;
}

template <typename S>
RingMat<S> rm_add(const RingMat<S>& a, const RingMat<S>& b) {
  RingMat<S> out = a;
  for (std::size_t k = 0; k < out.ent.size(); ++k) out.ent[k] += b.ent[k];
  return out;
}

template <typename S>
RingMat<S> rm_sub(const RingMat<S>& a, const RingMat<S>& b) {
  RingMat<S> out = a;
  for (std::size_t k = 0; k < out.ent.size(); ++k) out.ent[k] -= b.ent[k];
  return out;
}

template <typename S>
RingMat<S> rm_mul(const RingMat<S>& a, const RingMat<S>& b) {
  RingMat<S> out(a.ring, a.rows, b.cols);
  const Vec<S> zero = Vec<S>::Zero(a.ring->dim);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == zero) continue;
      for (int j = 0; j < b.cols; ++j) {
        if (b.at(k, j) == zero) continue;
        out.at(i, j) += mul(*a.ring, a.at(i, k), b.at(k, j));
      }
    }
  return out;
}

/// Right scaling of every entry: M * diag(c, ..., c) for a ring element c.
template <typename S>
RingMat<S> rm_scale_right(const RingMat<S>& a, const Vec<S>& c) {
  RingMat<S> out(a.ring, a.rows, a.cols);
  for (std::size_t k = 0; k < a.ent.size(); ++k) out.ent[k] = mul(*a.ring, a.ent[k], c);
  return out;
}

/// Conjugate transpose for an antiinvolution: out(i, j) = bar(in(j, i)).
/// Antimultiplicativity of bar makes this contravariant: barT(MN) = barT(N) barT(M).
template <typename S>
RingMat<S> bar_transpose(const Involution<S>& bar, const RingMat<S>& a) {
  RingMat<S> out(a.ring, a.cols, a.rows);
  for (int i = 0; i < a.cols; ++i)
    for (int j = 0; j < a.rows; ++j) out.at(i, j) = bar.mat * a.at(j, i);
  return out;
}

/// Plain transpose, entries unchanged.  Reinterprets a matrix over A as one
/// over A^op (and back): transpose over A^op reverses products exactly the way
/// matrix transposition needs.
template <typename S>
RingMat<S> rm_transpose(const RingMat<S>& a, const AlgebraPtr<S>& target_ring) {
  RingMat<S> out(target_ring, a.cols, a.rows);
  for (int i = 0; i < a.cols; ++i)
    for (int j = 0; j < a.rows; ++j) out.at(i, j) = a.at(j, i);
  return out;
}

/// Expands each entry to its left-regular block: an (rows*d) x (cols*d) matrix
/// over the base field.  Multiplicative, so idempotents stay idempotent and
/// invertibility is detected by plain rank.
template <typename S>
Mat<S> k_realization(const RingMat<S>& a) {
  const int d = a.ring->dim;
  Mat<S> out = Mat<S>::Zero(a.rows * d, a.cols * d);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      out.block(i * d, j * d, d, d) = left_regular(*a.ring, a.at(i, j));
  return out;
}

/// Entrywise application of an algebra morphism; reinterprets the matrix over
/// the target ring.
template <typename S>
RingMat<S> apply_morphism(const AlgebraMorphism<S>& f, const RingMat<S>& a) {
  RingMat<S> out(f.target, a.rows, a.cols);
  for (std::size_t k = 0; k < a.ent.size(); ++k) out.ent[k] = f.mat * a.ent[k];
  return out;
}

/// Entrywise application of a ring involution (no transpose).
template <typename S>
RingMat<S> apply_entrywise(const Involution<S>& t, const RingMat<S>& a) {
  RingMat<S> out = a;
  for (auto& e : out.ent) e = t.mat * e;
  return out;
}

template <typename S>
bool is_idempotent(const RingMat<S>& a) {
  return a.rows == a.cols && rm_mul(a, a) == a;
}

/// Block-diagonal join.
template <typename S>
RingMat<S> rm_direct_sum(const RingMat<S>& a, const RingMat<S>& b) {
  RingMat<S> out(a.ring, a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) out.at(a.rows + i, a.cols + j) = b.at(i, j);
  return out;
}

}  // namespace psiherm
