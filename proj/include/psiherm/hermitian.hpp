#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/module.hpp"
#include "psiherm/ring_matrix.hpp"

namespace psiherm {

/// Projective module with a hermitian form, recorded by its Gram matrix on
/// the ambient generators: form(u, v) = barT(u) Phi v.  Stored invariants:
/// barT(Phi) = Phi and barT(e) Phi e = Phi, so the form restricts to the
/// module and is hermitian-symmetric there.
template <typename S>
struct HermitianModule {
  Involution<S> bar;
  Module<S> module;
  RingMat<S> gram;

  const AlgebraPtr<S>& ring() const { return module.ring; }
};

template <typename S>
HermitianModule<S> make_hermitian(const Module<S>& m, const Involution<S>& bar,
                                  const RingMat<S>& gram) {
  const int n = m.ambient();
  if (gram.rows != n || gram.cols != n)
    throw input_error("hermitian form: Gram matrix shape does not match the module");
  const RingMat<S> flipped = bar_transpose(bar, gram);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (flipped.at(i, j) != gram.at(i, j))
        throw input_error("hermitian form: Gram matrix is not hermitian at entry (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")");
  if (!m.is_free) {
    const RingMat<S> compressed = rm_mul(bar_transpose(bar, m.idem), rm_mul(gram, m.idem));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (compressed.at(i, j) != gram.at(i, j))
          throw input_error(
              "hermitian form: Gram matrix is not supported on the module, entry (" +
              std::to_string(i) + ", " + std::to_string(j) + ") moves under compression");
  }
  return {bar, m, gram};
}

/// form(u, v) as a ring element, for columns u, v in the ambient module.
template <typename S>
Vec<S> evaluate_form(const HermitianModule<S>& h, const RingMat<S>& u, const RingMat<S>& v) {
  return rm_mul(bar_transpose(h.bar, u), rm_mul(h.gram, v)).at(0, 0);
}

/// The adjoint of the form: a map into the bar-twisted dual, which is the
/// module presented by barT(e) over the same ring.  Its matrix is the Gram
/// matrix itself; the stored compatibility invariant makes this a module map.
template <typename S>
ModuleMap<S> theta_map(const HermitianModule<S>& h) {
  const Module<S> twisted_dual =
      h.module.is_free ? free_module(h.ring(), h.module.ambient())
                       : projective_module(h.ring(), bar_transpose(h.bar, h.module.idem));
  return module_map(h.module, twisted_dual, h.gram);
}

/// Nondegeneracy = the adjoint map is bijective.  Realized over the base
/// field: the Gram matrix must act with full rank on the realized module.
template <typename S>
bool is_nondegenerate(const HermitianModule<S>& h) {
  if (h.module.is_free) {
    const int full = h.module.ambient() * h.ring()->dim;
    return rank_of(k_realization(h.gram)) == full;
  }
  const Mat<S> e = k_realization(h.module.idem);
  return rank_of(Mat<S>(k_realization(h.gram) * e)) == rank_of(e);
}

/// Hyperbolic space on a projective module P = p R^m: the underlying module
/// is P plus its bar-twisted dual, and the form pairs them off.
template <typename S>
HermitianModule<S> hyperbolic(const Module<S>& p, const Involution<S>& bar) {
  const int m = p.ambient();
  const RingMat<S> pbar = bar_transpose(bar, p.idem);
  RingMat<S> idem = rm_direct_sum(p.idem, pbar);
  RingMat<S> gram(p.ring, 2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      gram.at(i, m + j) = pbar.at(i, j);
      gram.at(m + i, j) = p.idem.at(i, j);
    }
  Module<S> module = p.is_free ? free_module(p.ring, 2 * m) : projective_module(p.ring, idem);
  return make_hermitian(module, bar, gram);
}

template <typename S>
HermitianModule<S> orthogonal_sum(const HermitianModule<S>& a, const HermitianModule<S>& b) {
  if (!same_structure(*a.ring(), *b.ring()) || a.bar.mat != b.bar.mat)
    throw input_error("orthogonal sum: forms live over different rings or involutions");
  return make_hermitian(direct_sum(a.module, b.module), a.bar,
                        rm_direct_sum(a.gram, b.gram));
}

/// Result of checking a claimed isometry, with the first violation spelled out.
struct IsometryCheck {
  bool ok = true;
  std::string witness;
};

/// T is an isometry when it is a bijective module map with
/// barT(T) Phi_target T = Phi_source.
template <typename S>
IsometryCheck verify_isometry(const HermitianModule<S>& src, const HermitianModule<S>& tgt,
                              const RingMat<S>& t) {
  if (t.rows != tgt.module.ambient() || t.cols != src.module.ambient())
    return {false, "matrix shape does not match the modules"};
  const RingMat<S> compressed = rm_mul(tgt.module.idem, rm_mul(t, src.module.idem));
  if (compressed != t) return {false, "matrix is not a module map (idempotent compression moves it)"};
  const RingMat<S> pulled = rm_mul(bar_transpose(src.bar, t), rm_mul(tgt.gram, t));
  for (int i = 0; i < t.cols; ++i)
    for (int j = 0; j < t.cols; ++j)
      if (pulled.at(i, j) != src.gram.at(i, j))
        return {false, "form is not preserved at entry (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")"};
  const ModuleMap<S> as_map{src.module, tgt.module, t};
  if (!is_bijective(as_map)) return {false, "map is not bijective on realized modules"};
  return {};
}

/// Transport a hermitian form along an algebra morphism that intertwines the
/// involutions: the new Gram matrix is the old one with f applied entrywise.
template <typename S>
HermitianModule<S> base_change_hermitian(const AlgebraMorphism<S>& f,
                                         const Involution<S>& target_bar,
                                         const HermitianModule<S>& h) {
  if (!intertwines(f, h.bar, target_bar))
    throw input_error("hermitian base change: morphism does not intertwine the involutions");
  return make_hermitian(extend_scalars(f, h.module), target_bar, apply_morphism(f, h.gram));
}

/// The trace form on semilinear endomorphisms of a free rank-n module over a
/// commutative algebra: form(F, G) = trace(sigma(F) G).  On the matrix-unit
/// coordinates this Gram matrix is the index-swap permutation.
template <typename S>
HermitianModule<S> trace_form(const AlgebraPtr<S>& a, const Involution<S>& sigma, int n) {
  const Module<S> m = hom_module(a, n);
  RingMat<S> gram(a, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram.at(i * n + j, j * n + i) = a->unit;
  return make_hermitian(m, sigma, gram);
}

/// Formal difference of orthogonal sums of hermitian forms; invariants are
/// computed summand by summand and combined with signs.
template <typename S>
struct GWClass {
  std::vector<HermitianModule<S>> plus;
  std::vector<HermitianModule<S>> minus;
};

}  // namespace psiherm
