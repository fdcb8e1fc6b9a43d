#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/linalg.hpp"
#include "psiherm/ring_matrix.hpp"

namespace psiherm {

/// Finitely generated projective right module, presented as the image of an
/// idempotent acting on a free module: E = e R^n.  Elements are column
/// vectors x with e x = x.
template <typename S>
struct Module {
  AlgebraPtr<S> ring;
  RingMat<S> idem;
  bool is_free = false;

  int ambient() const { return idem.rows; }
};

template <typename S>
bool operator==(const Module<S>& a, const Module<S>& b) {
  return a.is_free == b.is_free && same_structure(*a.ring, *b.ring) && a.idem == b.idem;
}

template <typename S>
Module<S> free_module(const AlgebraPtr<S>& ring, int n) {
  if (n < 0) throw input_error("free module: rank must be nonnegative");
  return {ring, rm_identity(ring, n), true};
}

template <typename S>
Module<S> projective_module(const AlgebraPtr<S>& ring, const RingMat<S>& e) {
  if (e.rows != e.cols) throw input_error("projective module: presenting matrix is not square");
  const RingMat<S> sq = rm_mul(e, e);
  for (int i = 0; i < e.rows; ++i)
    for (int j = 0; j < e.cols; ++j)
      if (sq.at(i, j) != e.at(i, j))
        throw input_error("projective module: presenting matrix is not idempotent, entry (" +
                          std::to_string(i) + ", " + std::to_string(j) + ") of e^2 differs");
  const bool free = (e == rm_identity(ring, e.rows));
  return {ring, e, free};
}

/// Dimension over the base field: the rank of the realized idempotent.
template <typename S>
int k_dimension(const Module<S>& m) {
  if (m.is_free) return m.ambient() * m.ring->dim;
  return rank_of(k_realization(m.idem));
}

template <typename S>
Module<S> direct_sum(const Module<S>& a, const Module<S>& b) {
  return {a.ring, rm_direct_sum(a.idem, b.idem), a.is_free && b.is_free};
}

/// The complement (1 - e) R^n, so that E and its complement sum to R^n.
template <typename S>
Module<S> complement(const Module<S>& m) {
  return projective_module(m.ring, rm_sub(rm_identity(m.ring, m.ambient()), m.idem));
}

/// Dual as a module over the opposite ring, presented by the transposed
/// idempotent with unchanged entries.  Functionals are column vectors f over
/// R^op; the pairing with x in E is sum_i f_i x_i, a ring element.
template <typename S>
Module<S> dual_module(const Module<S>& m, const AlgebraPtr<S>& op_ring) {
  RingMat<S> t = rm_transpose(m.idem, op_ring);
  return {op_ring, std::move(t), m.is_free};
}

template <typename S>
Vec<S> eval_pairing(const Module<S>& m, const RingMat<S>& f, const RingMat<S>& x) {
  Vec<S> acc = Vec<S>::Zero(m.ring->dim);
  for (int i = 0; i < m.ambient(); ++i) acc += mul(*m.ring, f.at(i, 0), x.at(i, 0));
  return acc;
}

// ---------------------------------------------------------------------------
// Module maps
// ---------------------------------------------------------------------------

template <typename S>
struct ModuleMap {
  Module<S> src;
  Module<S> tgt;
  RingMat<S> mat;  // tgt.ambient() x src.ambient()
};

/// A matrix represents a map of projective modules exactly when compression
/// by the idempotents on both sides leaves it unchanged.
template <typename S>
void validate_module_map(const ModuleMap<S>& h) {
  if (h.mat.rows != h.tgt.ambient() || h.mat.cols != h.src.ambient())
    throw input_error("module map: wrong shape");
  if (rm_mul(h.tgt.idem, rm_mul(h.mat, h.src.idem)) != h.mat)
    throw input_error("module map: matrix is not compatible with the presenting idempotents");
}

template <typename S>
ModuleMap<S> module_map(Module<S> src, Module<S> tgt, RingMat<S> mat) {
  ModuleMap<S> h{std::move(src), std::move(tgt), std::move(mat)};
  validate_module_map(h);
  return h;
}

template <typename S>
ModuleMap<S> compose(const ModuleMap<S>& g, const ModuleMap<S>& h) {
  return module_map(h.src, g.tgt, rm_mul(g.mat, h.mat));
}

/// Transpose with unchanged entries, read over the opposite ring.
template <typename S>
ModuleMap<S> dual_map(const ModuleMap<S>& h, const AlgebraPtr<S>& op_ring) {
  return module_map(dual_module(h.tgt, op_ring), dual_module(h.src, op_ring),
                    rm_transpose(h.mat, op_ring));
}

/// Bijectivity over the base field; for maps of projectives this is exactly
/// invertibility, detected through realized ranks.
template <typename S>
bool is_bijective(const ModuleMap<S>& h) {
  const Mat<S> m = k_realization(h.mat);
  const Mat<S> es = k_realization(h.src.idem);
  const int dim_src = h.src.is_free ? h.src.ambient() * h.src.ring->dim : rank_of(es);
  const int dim_tgt = k_dimension(h.tgt);
  if (dim_src != dim_tgt) return false;
  return rank_of(Mat<S>(m * es)) == dim_src;
}

// ---------------------------------------------------------------------------
// Base change along an algebra morphism
// ---------------------------------------------------------------------------

template <typename S>
Module<S> extend_scalars(const AlgebraMorphism<S>& f, const Module<S>& m) {
  Module<S> out{f.target, apply_morphism(f, m.idem), m.is_free};
  return out;
}

template <typename S>
ModuleMap<S> extend_scalars(const AlgebraMorphism<S>& f, const ModuleMap<S>& h) {
  return module_map(extend_scalars(f, h.src), extend_scalars(f, h.tgt),
                    apply_morphism(f, h.mat));
}

// ---------------------------------------------------------------------------
// Tensor product over the base field: (module over A^op) (x) (module over A)
// as a module over B = A (x) A^op.  Generator (i, j) sits at index i*n + j,
// row-major in the generators of the two factors.
// ---------------------------------------------------------------------------

template <typename S>
Module<S> tensor_over_k(const Enveloping<S>& env, const Module<S>& p, const Module<S>& q) {
  if (!same_structure(*p.ring, *env.Aop))
    throw input_error("tensor: left factor must live over the opposite algebra");
  if (!same_structure(*q.ring, *env.A))
    throw input_error("tensor: right factor must live over the base algebra");
  const int m = p.ambient(), n = q.ambient();
  RingMat<S> e(env.B, m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l)
          e.at(i * n + j, k * n + l) = env.embed(q.idem.at(j, l), p.idem.at(i, k));
  Module<S> out{env.B, std::move(e), p.is_free && q.is_free};
  return out;
}

/// Coordinates of the simple tensor x (x) y for x over A^op and y over A.
template <typename S>
RingMat<S> tensor_element(const Enveloping<S>& env, const RingMat<S>& x, const RingMat<S>& y) {
  const int m = x.rows, n = y.rows;
  RingMat<S> out(env.B, m * n, 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out.at(i * n + j, 0) = env.embed(y.at(j, 0), x.at(i, 0));
  return out;
}

/// Tensor of two module maps on the same generator ordering.
template <typename S>
ModuleMap<S> tensor_map(const Enveloping<S>& env, const ModuleMap<S>& s, const ModuleMap<S>& t) {
  const int m = s.src.ambient(), n = t.src.ambient();
  const int mm = s.tgt.ambient(), nn = t.tgt.ambient();
  RingMat<S> out(env.B, mm * nn, m * n);
  for (int i = 0; i < mm; ++i)
    for (int j = 0; j < nn; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < n; ++l)
          out.at(i * nn + j, k * n + l) = env.embed(t.mat.at(j, l), s.mat.at(i, k));
  return module_map(tensor_over_k(env, s.src, t.src), tensor_over_k(env, s.tgt, t.tgt),
                    std::move(out));
}

// ---------------------------------------------------------------------------
// Semilinear endomorphisms of a free module over a commutative algebra.
// For a chosen involution sigma, a matrix H acts by x -> H sigma(x); the
// module of such maps is free on the matrix units E_kl (row-major).
// ---------------------------------------------------------------------------

template <typename S>
Module<S> hom_module(const AlgebraPtr<S>& a, int n) {
  if (!a->commutative)
    throw input_error("semilinear endomorphism module requires a commutative algebra");
  return free_module(a, n * n);
}

/// Apply the semilinear map with matrix H (n x n, flattened row-major into
/// coordinates) to the column x.
template <typename S>
RingMat<S> hom_apply(const AlgebraPtr<S>& a, const Involution<S>& sigma, const RingMat<S>& hom,
                     const RingMat<S>& x, int n) {
  RingMat<S> out(a, n, 1);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      out.at(r, 0) += mul(*a, hom.at(r * n + s, 0), Vec<S>(sigma.mat * x.at(s, 0)));
  return out;
}

/// Identification of the base-changed tensor square with the semilinear
/// endomorphisms: generator (i, j) is sent to the matrix unit E_ji.  The map
/// is a permutation of coordinates, hence an isomorphism of free modules.
template <typename S>
ModuleMap<S> hom_identification(const AlgebraPtr<S>& a, int n) {
  const Module<S> src = free_module(a, n * n);
  const Module<S> tgt = hom_module(a, n);
  RingMat<S> p(a, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.at(j * n + i, i * n + j) = a->unit;
  return module_map(src, tgt, std::move(p));
}

// ---------------------------------------------------------------------------
// Classes in the Grothendieck group, kept in the normal form [E] - [free].
// ---------------------------------------------------------------------------

template <typename S>
struct K0Class {
  Module<S> plus;
  Module<S> minus;  // always free after normalization
};

/// [E] - [F] = [E + complement(F)] - [R^ambient(F)] whenever F is projective;
/// the normal form keeps the negative part free.
template <typename S>
K0Class<S> k0_class(const Module<S>& plus, const Module<S>& minus) {
  if (minus.is_free) return {plus, minus};
  return {direct_sum(plus, complement(minus)), free_module(minus.ring, minus.ambient())};
}

template <typename S>
K0Class<S> k0_free_difference(const AlgebraPtr<S>& ring, int a, int b) {
  return {free_module(ring, a), free_module(ring, b)};
}

/// Virtual dimension over the base field.
template <typename S>
int virtual_k_dimension(const K0Class<S>& c) {
  return k_dimension(c.plus) - k_dimension(c.minus);
}

}  // namespace psiherm
