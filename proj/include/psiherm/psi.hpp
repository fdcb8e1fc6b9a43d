#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/hermitian.hpp"
#include "psiherm/module.hpp"
#include "psiherm/ring_matrix.hpp"
#include "psiherm/rng.hpp"

namespace psiherm {

/// The tensor square of a module with its dual, carrying the pairing form
/// form[(f (x) y), (f' (x) y')] = f(y') (x) f'(y) over the enveloping algebra
/// with the factor-swap involution.
template <typename S>
struct PsiResult {
  Module<S> input;
  HermitianModule<S> output;
  std::vector<std::string> basis_map;  // generator (i, j) of dual (x) direct
};

/// Gram matrix of the pairing on the free ambient generators: the entry at
/// ((i,j), (k,l)) is delta_il delta_jk times the unit of B.
template <typename S>
RingMat<S> ambient_pairing_gram(const Enveloping<S>& env, int n) {
  RingMat<S> phi(env.B, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi.at(i * n + j, j * n + i) = env.B->unit;
  return phi;
}

template <typename S>
PsiResult<S> psi_module(const Enveloping<S>& env, const Module<S>& e) {
  if (!same_structure(*e.ring, *env.A))
    throw input_error("psi: module does not live over the enveloping algebra's base");
  const int n = e.ambient();
  const Module<S> tensor = tensor_over_k(env, dual_module(e, env.Aop), e);
  RingMat<S> gram = ambient_pairing_gram(env, n);
  if (!e.is_free) {
    // restrict the ambient pairing to the image of the tensor idempotent
    gram = rm_mul(bar_transpose(env.swap(), tensor.idem), rm_mul(gram, tensor.idem));
  }
  PsiResult<S> out{e, make_hermitian(tensor, env.swap(), gram), {}};
  out.basis_map.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.basis_map.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Orthogonal decomposition of psi of a direct sum
// ---------------------------------------------------------------------------

template <typename S>
struct SumDecomposition {
  HermitianModule<S> whole;       // psi(E + F)
  HermitianModule<S> decomposed;  // psi(E) + psi(F) + H(dual E (x) F)
  RingMat<S> map;                 // isometry whole -> decomposed
};

/// The generator permutation sorting pairs (i, j) over E + F into the four
/// blocks dual(E)(x)E, dual(F)(x)F, dual(E)(x)F and dual(F)(x)E; the last two
/// make up the hyperbolic summand in that order.
template <typename S>
SumDecomposition<S> sum_decomposition_isometry(const Enveloping<S>& env, const Module<S>& e,
                                               const Module<S>& f) {
  if (!same_structure(*e.ring, *f.ring))
    throw input_error("sum decomposition: modules live over different rings");
  const int m = e.ambient(), n = f.ambient();
  const int total = m + n;

  const PsiResult<S> whole = psi_module(env, direct_sum(e, f));
  const PsiResult<S> pe = psi_module(env, e);
  const PsiResult<S> pf = psi_module(env, f);
  const Module<S> cross = tensor_over_k(env, dual_module(e, env.Aop), f);
  const HermitianModule<S> hyp = hyperbolic(cross, env.swap());

  const HermitianModule<S> decomposed =
      orthogonal_sum(orthogonal_sum(pe.output, pf.output), hyp);

  RingMat<S> perm(env.B, total * total, total * total);
  const auto target_index = [&](int i, int j) {
    if (i < m && j < m) return i * m + j;
    if (i >= m && j >= m) return m * m + (i - m) * n + (j - m);
    if (i < m) return m * m + n * n + i * n + (j - m);          // dual(E) (x) F
    return m * m + n * n + m * n + j * n + (i - m);             // dual(F) (x) E
  };
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      perm.at(target_index(i, j), i * total + j) = env.B->unit;

  RingMat<S> map = whole.output.module.is_free ? std::move(perm)
                                               : rm_mul(perm, whole.output.module.idem);
  return {whole.output, decomposed, std::move(map)};
}

// ---------------------------------------------------------------------------
// The representation of invertible matrices by isometries
// ---------------------------------------------------------------------------

/// Exact inverse of a square matrix over the ring, through the realization:
/// the realized inverse is a polynomial in the realized matrix, so it comes
/// from a ring matrix, which is read back blockwise and verified two-sided.
template <typename S>
std::optional<RingMat<S>> rm_inverse(const RingMat<S>& g) {
  if (g.rows != g.cols) return std::nullopt;
  const auto realized_inv = inverse_of(k_realization(g));
  if (!realized_inv) return std::nullopt;
  const int d = g.ring->dim;
  RingMat<S> inv(g.ring, g.rows, g.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j)
      inv.at(i, j) = realized_inv->block(i * d, j * d, d, d) * g.ring->unit;
  const RingMat<S> id = rm_identity(g.ring, g.rows);
  if (rm_mul(g, inv) != id || rm_mul(inv, g) != id) return std::nullopt;
  return inv;
}

template <typename S>
struct GLRepresentationElement {
  int n = 0;
  RingMat<S> g;      // invertible over A
  RingMat<S> image;  // isometry of psi(A^n) over B
};

/// psi of an automorphism of the free rank-n module, with a caller-supplied
/// exact inverse (verified): the dual factor moves by the contragredient,
/// the direct factor by g itself, so the image has entry
/// ((k,l), (i,j)) = g_{lj} (x) (g^{-1})_{ik}.
template <typename S>
GLRepresentationElement<S> psi_on_iso(const Enveloping<S>& env, const RingMat<S>& g,
                                      const RingMat<S>& ginv) {
  const int n = g.rows;
  if (g.cols != n || ginv.rows != n || ginv.cols != n)
    throw input_error("psi on isomorphism: matrices must be square of equal size");
  if (rm_mul(g, ginv) != rm_identity(g.ring, n))
    throw input_error("psi on isomorphism: supplied inverse fails g * ginv = 1");
  RingMat<S> image(env.B, n * n, n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          image.at(k * n + l, i * n + j) = env.embed(g.at(l, j), ginv.at(i, k));
  return {n, g, std::move(image)};
}

/// Same, inverting through the realization first.
template <typename S>
GLRepresentationElement<S> psi_on_iso(const Enveloping<S>& env, const RingMat<S>& g) {
  const auto ginv = rm_inverse(g);
  if (!ginv) throw input_error("psi on isomorphism: matrix is not invertible over the ring");
  return psi_on_iso(env, g, *ginv);
}

/// (p, q) = (n + (n^2 - n)/2, (n^2 - n)/2): the split of the n^2 generators
/// into symmetric and antisymmetric directions.
inline std::pair<int, int> signature_of_representation_target(int n) {
  if (n < 1) throw input_error("representation target: n must be positive");
  const int off = (n * n - n) / 2;
  return {n + off, off};
}

/// Random invertible matrix with exact inverse: a product of transvections
/// and diagonal unit scalings, with the inverse accumulated factor by factor.
template <typename S>
std::pair<RingMat<S>, RingMat<S>> random_gl(const AlgebraPtr<S>& a, int n, DetRng& rng) {
  RingMat<S> g = rm_identity(a, n);
  RingMat<S> ginv = rm_identity(a, n);
  const int steps = 4 + static_cast<int>(rng.below(3));
  for (int s = 0; s < steps; ++s) {
    RingMat<S> el = rm_identity(a, n);
    RingMat<S> el_inv = rm_identity(a, n);
    if (n >= 2 && rng.below(3) != 0) {
      int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (u == v) v = (v + 1) % n;
      const Vec<S> x = random_element(*a, rng);
      el.at(u, v) = x;
      el_inv.at(u, v) = -x;
    } else {
      const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const auto [c, cinv] = random_unit(*a, rng);
      el.at(u, u) = c;
      el_inv.at(u, u) = cinv;
    }
    g = rm_mul(g, el);
    ginv = rm_mul(el_inv, ginv);
  }
  return {g, ginv};
}

// ---------------------------------------------------------------------------
// Dold extension to Grothendieck classes
// ---------------------------------------------------------------------------

/// gamma(E, F) = hyperbolic of dual(E) (x) F; the cross term of psi on sums.
template <typename S>
HermitianModule<S> gamma(const Enveloping<S>& env, const Module<S>& e, const Module<S>& f) {
  if (!same_structure(*e.ring, *f.ring))
    throw input_error("gamma: modules live over different rings");
  return hyperbolic(tensor_over_k(env, dual_module(e, env.Aop), f), env.swap());
}

/// Biadditive extension to formal differences.
template <typename S>
GWClass<S> gamma(const Enveloping<S>& env, const K0Class<S>& x, const K0Class<S>& y) {
  GWClass<S> out;
  out.plus.push_back(gamma(env, x.plus, y.plus));
  out.plus.push_back(gamma(env, x.minus, y.minus));
  out.minus.push_back(gamma(env, x.plus, y.minus));
  out.minus.push_back(gamma(env, x.minus, y.plus));
  return out;
}

/// psi on a class [E] - [A^n], by the difference formula
/// psi(x - y) = psi(x) - psi(y) - gamma(x, y) + gamma(y, y).
template <typename S>
GWClass<S> dold_extend_psi(const Enveloping<S>& env, const K0Class<S>& c) {
  const K0Class<S> norm = k0_class(c.plus, c.minus);
  GWClass<S> out;
  out.plus.push_back(psi_module(env, norm.plus).output);
  out.plus.push_back(gamma(env, norm.minus, norm.minus));
  out.minus.push_back(psi_module(env, norm.minus).output);
  out.minus.push_back(gamma(env, norm.plus, norm.minus));
  return out;
}

// ---------------------------------------------------------------------------
// Degree-2 operations on classes over a commutative base.  Supported for
// differences of free modules, where ranks determine everything: the
// symmetric square of rank r has rank r(r+1)/2, the exterior square
// r(r-1)/2, and the cross term of either operation on a sum is the plain
// tensor product.
// ---------------------------------------------------------------------------

enum class Degree2Op { sym_square, ext_square };

inline long degree2_rank(Degree2Op op, long r) {
  return op == Degree2Op::sym_square ? r * (r + 1) / 2 : r * (r - 1) / 2;
}

template <typename S>
K0Class<S> free_class_of_net_rank(const AlgebraPtr<S>& ring, long net) {
  if (net >= 0) return k0_free_difference(ring, static_cast<int>(net), 0);
  return k0_free_difference(ring, 0, static_cast<int>(-net));
}

template <typename S>
K0Class<S> dold_extend_degree2(Degree2Op op, const K0Class<S>& c) {
  const auto& ring = c.plus.ring;
  if (!ring->commutative)
    throw input_error("degree-2 operations require a commutative base algebra");
  if (!c.plus.is_free || !c.minus.is_free)
    throw input_error("degree-2 operations support differences of free modules only");
  const long a = c.plus.ambient(), b = c.minus.ambient();
  const long net = degree2_rank(op, a) - degree2_rank(op, b) - a * b + b * b;
  return free_class_of_net_rank(ring, net);
}

/// The difference of the symmetric and exterior squares; a ring operation on
/// classes that preserves the augmentation (virtual rank).
template <typename S>
K0Class<S> adams_psi2(const K0Class<S>& c) {
  const K0Class<S> s = dold_extend_degree2(Degree2Op::sym_square, c);
  const K0Class<S> l = dold_extend_degree2(Degree2Op::ext_square, c);
  const long net = (static_cast<long>(s.plus.ambient()) - s.minus.ambient()) -
                   (static_cast<long>(l.plus.ambient()) - l.minus.ambient());
  return free_class_of_net_rank(c.plus.ring, net);
}

/// Virtual rank of a difference of free modules.
template <typename S>
long free_class_rank(const K0Class<S>& c) {
  if (!c.plus.is_free || !c.minus.is_free)
    throw input_error("virtual rank over the ring is defined here for free differences only");
  return static_cast<long>(c.plus.ambient()) - c.minus.ambient();
}

}  // namespace psiherm
