#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/hermitian.hpp"
#include "psiherm/linalg.hpp"
#include "psiherm/module.hpp"
#include "psiherm/psi.hpp"
#include "psiherm/ring_matrix.hpp"

namespace psiherm {

/// Computable shadow of a hermitian class: enough to separate everything the
/// library asserts, cheap enough to compare exactly.  rank is the module rank
/// over its own ring when every contributing module is free; otherwise all
/// contributions are measured over the base field and the flag is set.
struct WittFingerprint {
  long rank = 0;
  bool rank_is_k_dimension = false;
  std::string det_class = "1";
  std::optional<std::pair<long, long>> signature;
  bool degenerate = false;
  long radical_dim = 0;

  friend bool operator==(const WittFingerprint&, const WittFingerprint&) = default;
};

inline std::string to_string(const WittFingerprint& f) {
  std::string s = "rank " + std::to_string(f.rank) +
                  (f.rank_is_k_dimension ? " (over the base field)" : "") + ", det class " +
                  f.det_class;
  if (f.signature)
    s += ", signature (" + std::to_string(f.signature->first) + ", " +
         std::to_string(f.signature->second) + ")";
  if (f.degenerate) s += ", radical dim " + std::to_string(f.radical_dim);
  return s;
}

// ---------------------------------------------------------------------------
// Reduction of a hermitian module to a symmetric Gram matrix over the field
// ---------------------------------------------------------------------------

/// Trace transfer: the k-valued symmetric form beta(x, y) = Tr_{A/k} form(x, y)
/// on the ambient k-coordinates (i, a) -> i*d + a.  Symmetric because the
/// trace is invariant under sigma and A is commutative.
template <typename S>
Mat<S> trace_transfer_gram(const HermitianModule<S>& h) {
  const auto& a = *h.ring();
  const int n = h.module.ambient(), d = a.dim;
  const auto all_zero = [](const Vec<S>& v) {
    for (int r = 0; r < v.size(); ++r)
      if (!field_traits<S>::is_zero(v(r))) return false;
    return true;
  };
  Mat<S> t = Mat<S>::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec<S>& phi = h.gram.at(i, j);
      if (all_zero(phi)) continue;
      for (int aa = 0; aa < d; ++aa) {
        const Vec<S> left = mul(a, Vec<S>(h.bar.mat.col(aa)), phi);
        for (int bb = 0; bb < d; ++bb)
          t(i * d + aa, j * d + bb) = trace_of(a, mul(a, left, basis_element(a, bb)));
      }
    }
  return t;
}

/// Restrict a symmetric matrix on the ambient coordinates to the column space
/// of the realized idempotent, on its pivot-column basis.
template <typename S>
Mat<S> restrict_to_module(const Mat<S>& gram_k, const Module<S>& m) {
  if (m.is_free) return gram_k;
  const Mat<S> e = k_realization(m.idem);
  const std::vector<int> pivots = pivot_columns(e);
  Mat<S> basis(e.rows(), static_cast<int>(pivots.size()));
  for (std::size_t c = 0; c < pivots.size(); ++c) basis.col(c) = e.col(pivots[c]);
  return Mat<S>(basis.transpose() * gram_k * basis);
}

/// Chooses the involution used to push forms over B down to A: the first
/// declared one whose fixed subspace is exactly the base field.
template <typename S>
const Involution<S>* fingerprint_involution(const Algebra<S>& a) {
  for (const auto& t : a.involutions)
    if (fixed_space_dimension(a, t) == 1) return &t;
  return nullptr;
}

namespace detail {

template <typename S>
struct SummandInvariants {
  long ring_rank = 0;  // ambient rank over the module's own ring
  bool is_free = false;
  long diag_rank = 0;  // nonzero entries after diagonalization over k
  long k_dim = 0;
  long radical = 0;
  S det_rep;
  std::optional<std::pair<long, long>> sig;
};

template <typename S>
SummandInvariants<S> reduce_summand(const Enveloping<S>& env, const HermitianModule<S>& h) {
  const FieldDescriptor field = h.ring()->field;
  Mat<S> gram_k;
  Module<S> carrier = h.module;

  if (h.ring()->dim == 1) {
    const int n = h.module.ambient();
    gram_k.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram_k(i, j) = h.gram.at(i, j)(0);
    gram_k = restrict_to_module(gram_k, carrier);
  } else if (same_structure(*h.ring(), *env.B)) {
    if (!env.A->commutative)
      throw input_error("fingerprint: base '" + env.A->name +
                        "' is not commutative, forms over its enveloping algebra have no "
                        "supported reduction");
    const Involution<S>* sigma = fingerprint_involution(*env.A);
    if (!sigma)
      throw input_error("fingerprint: algebra '" + env.A->name +
                        "' declares no involution whose fixed subspace is the base field");
    const auto mu = mult_morphism(env, *sigma);
    const HermitianModule<S> down = base_change_hermitian(mu, *sigma, h);
    gram_k = restrict_to_module(trace_transfer_gram(down), down.module);
    carrier = down.module;
  } else if (same_structure(*h.ring(), *env.A) && env.A->commutative) {
    if (fixed_space_dimension(*h.ring(), h.bar) != 1)
      throw input_error("fingerprint: involution '" + h.bar.name + "' on '" + h.ring()->name +
                        "' does not fix exactly the base field; no supported reduction");
    gram_k = restrict_to_module(trace_transfer_gram(h), h.module);
  } else {
    throw input_error("fingerprint: unsupported base ring '" + h.ring()->name + "'");
  }

  SummandInvariants<S> out;
  out.ring_rank = h.module.ambient();
  out.is_free = h.module.is_free;
  out.k_dim = gram_k.rows();
  out.det_rep = field_traits<S>::from_int(1, field);

  const auto diag = congruent_diagonalize(gram_k);
  long p = 0, q = 0;
  for (const S& entry : diag.diagonal) {
    if (field_traits<S>::is_zero(entry)) {
      ++out.radical;
      continue;
    }
    ++out.diag_rank;
    out.det_rep = field_traits<S>::square_class_rep(out.det_rep * entry, field);
    if constexpr (std::is_same_v<S, Rational>) {
      if (field_traits<S>::sign(entry) > 0) ++p;
      else ++q;
    }
  }
  if constexpr (std::is_same_v<S, Rational>) out.sig = std::pair<long, long>{p, q};
  return out;
}

}  // namespace detail

/// Fingerprint of one hermitian module over a supported base.
template <typename S>
WittFingerprint fingerprint_of(const Enveloping<S>& env, const HermitianModule<S>& h) {
  const auto inv = detail::reduce_summand(env, h);
  WittFingerprint f;
  f.rank_is_k_dimension = !inv.is_free;
  f.rank = inv.is_free ? inv.ring_rank : inv.diag_rank + inv.radical;
  f.det_class = field_traits<S>::str(inv.det_rep);
  f.signature = inv.sig;
  f.degenerate = inv.radical > 0;
  f.radical_dim = inv.radical;
  return f;
}

/// Fingerprint of a formal difference: ranks and signatures subtract, square
/// classes of determinants multiply (square classes are their own inverses).
template <typename S>
WittFingerprint fingerprint_of(const Enveloping<S>& env, const GWClass<S>& c) {
  std::vector<detail::SummandInvariants<S>> plus, minus;
  for (const auto& h : c.plus) plus.push_back(detail::reduce_summand(env, h));
  for (const auto& h : c.minus) minus.push_back(detail::reduce_summand(env, h));

  bool all_free = true;
  for (const auto& s : plus) all_free = all_free && s.is_free;
  for (const auto& s : minus) all_free = all_free && s.is_free;

  const FieldDescriptor field = env.A->field;
  WittFingerprint f;
  f.rank_is_k_dimension = !all_free;
  S det = field_traits<S>::from_int(1, field);
  long p = 0, q = 0;
  bool any_sig = false;
  for (const auto& s : plus) {
    f.rank += all_free ? s.ring_rank : s.diag_rank + s.radical;
    det = field_traits<S>::square_class_rep(det * s.det_rep, field);
    f.degenerate = f.degenerate || s.radical > 0;
    f.radical_dim += s.radical;
    if (s.sig) {
      any_sig = true;
      p += s.sig->first;
      q += s.sig->second;
    }
  }
  for (const auto& s : minus) {
    f.rank -= all_free ? s.ring_rank : s.diag_rank + s.radical;
    det = field_traits<S>::square_class_rep(det * s.det_rep, field);
    f.degenerate = f.degenerate || s.radical > 0;
    f.radical_dim += s.radical;
    if (s.sig) {
      p -= s.sig->first;
      q -= s.sig->second;
    }
  }
  f.det_class = field_traits<S>::str(det);
  if (any_sig) f.signature = std::pair<long, long>{p, q};
  return f;
}

/// Fingerprint of a plain symmetric Gram matrix over the base field, with the
/// trivial involution.  Used directly by congruence-invariance checks.
template <typename S>
WittFingerprint fingerprint_of_symmetric(const Mat<S>& gram, const FieldDescriptor& field) {
  WittFingerprint f;
  f.rank_is_k_dimension = false;
  S det = field_traits<S>::from_int(1, field);
  const auto diag = congruent_diagonalize(gram);
  long p = 0, q = 0, rank = 0;
  for (const S& entry : diag.diagonal) {
    if (field_traits<S>::is_zero(entry)) {
      ++f.radical_dim;
      continue;
    }
    ++rank;
    det = field_traits<S>::square_class_rep(det * entry, field);
    if constexpr (std::is_same_v<S, Rational>) {
      if (field_traits<S>::sign(entry) > 0) ++p;
      else ++q;
    }
  }
  f.rank = rank;
  f.degenerate = f.radical_dim > 0;
  f.det_class = field_traits<S>::str(det);
  if constexpr (std::is_same_v<S, Rational>) f.signature = std::pair<long, long>{p, q};
  return f;
}

/// (positives, negatives, radical) of a symmetric Gram matrix over the
/// rationals; basis-independent by Sylvester's law.
struct SignatureResult {
  long p = 0;
  long q = 0;
  long radical = 0;
};

inline SignatureResult signature_of(const Mat<Rational>& gram) {
  const auto diag = congruent_diagonalize(gram);
  SignatureResult r;
  for (const auto& entry : diag.diagonal) {
    const int s = sgn(entry);
    if (s > 0) ++r.p;
    else if (s < 0) ++r.q;
    else ++r.radical;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Eigenspace decomposition of the trace form on endomorphisms
// ---------------------------------------------------------------------------

/// The trace form on End of a free rank-n module splits orthogonally along
/// the transpose involution into matrices fixed by it and matrices negated
/// by it, of dimensions n(n+1)/2 and n(n-1)/2.
template <typename S>
struct EigenspaceSplit {
  HermitianModule<S> symmetric_part;
  HermitianModule<S> antisymmetric_part;
  std::pair<int, int> dims;
};

template <typename S>
EigenspaceSplit<S> diagonal_restriction(const AlgebraPtr<S>& a, int n) {
  if (!a->commutative)
    throw input_error("diagonal restriction requires a commutative base algebra");
  if (n < 1) throw input_error("diagonal restriction: rank must be positive");
  const Involution<S> id = identity_involution(*a);
  const HermitianModule<S> tf = trace_form(a, id, n);

  const int ds = n * (n + 1) / 2, da = n * (n - 1) / 2;
  RingMat<S> vs(a, n * n, ds), va(a, n * n, da);
  int col = 0;
  for (int i = 0; i < n; ++i) vs.at(i * n + i, col++) = a->unit;  // E_ii
  int acol = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      vs.at(i * n + j, col) = a->unit;  // E_ij + E_ji
      vs.at(j * n + i, col) = a->unit;
      ++col;
      va.at(i * n + j, acol) = a->unit;  // E_ij - E_ji
      va.at(j * n + i, acol) = Vec<S>(-a->unit);
      ++acol;
    }

  const auto restrict_gram = [&](const RingMat<S>& v) {
    return rm_mul(bar_transpose(id, v), rm_mul(tf.gram, v));
  };
  EigenspaceSplit<S> out{
      make_hermitian(free_module(a, ds), id, restrict_gram(vs)),
      make_hermitian(free_module(a, da), id, restrict_gram(va)),
      {ds, da}};
  return out;
}

// ---------------------------------------------------------------------------
// Order of the image of K0 in the reduced Witt group, mod p^alpha
// ---------------------------------------------------------------------------

/// Witt class of a form over a prime field: rank parity and discriminant
/// (-1)^{r(r-1)/2} det, a complete invariant there.
struct WittPairFp {
  int rank_parity = 0;
  std::int64_t disc = 1;  // canonical square-class value

  friend bool operator==(const WittPairFp&, const WittPairFp&) = default;
  friend bool operator<(const WittPairFp& a, const WittPairFp& b) {
    return a.rank_parity != b.rank_parity ? a.rank_parity < b.rank_parity : a.disc < b.disc;
  }
};

inline WittPairFp witt_pair_fp(long rank, const Fp& det_rep, const FieldDescriptor& field) {
  const long twist = (rank * (rank - 1) / 2) % 2;
  Fp disc = det_rep;
  if (twist) disc = field_traits<Fp>::from_int(-1, field) * disc;
  disc = field_traits<Fp>::square_class_rep(disc, field);
  return {static_cast<int>(((rank % 2) + 2) % 2), disc.value()};
}

/// Orthogonal sum on Witt classes: parities add and discriminants pick up
/// the sign (-1)^{r1 r2}.
inline WittPairFp witt_add_fp(const WittPairFp& a, const WittPairFp& b,
                              const FieldDescriptor& field) {
  Fp d = field_traits<Fp>::from_int(a.disc, field) * field_traits<Fp>::from_int(b.disc, field);
  if (a.rank_parity == 1 && b.rank_parity == 1) d = field_traits<Fp>::from_int(-1, field) * d;
  d = field_traits<Fp>::square_class_rep(d, field);
  return {(a.rank_parity + b.rank_parity) % 2, d.value()};
}

inline long pow_long(long base, long exp) {
  long r = 1;
  for (long i = 0; i < exp; ++i) {
    if (r > (1L << 40) / base) throw input_error("image order: p^alpha is too large");
    r *= base;
  }
  return r;
}

/// Order of the image of K0(A)/p^alpha inside the cokernel of the hyperbolic
/// map into the Witt group, reduced mod p^alpha.  Supported for A a field:
/// over the rationals the signature identifies the quotient with Z/p^alpha;
/// over a prime field the group is enumerated by (rank parity, discriminant)
/// and the coset count is computed directly.
template <typename S>
long image_order_mod(const AlgebraPtr<S>& a, long p, long alpha) {
  if (a->dim != 1)
    throw input_error("image order: supported only for one-dimensional base algebras, got '" +
                      a->name + "'");
  if (p < 3 || p % 2 == 0 || !is_prime64(p))
    throw input_error("image order: modulus base must be an odd prime");
  if (alpha < 1) throw input_error("image order: exponent must be positive");
  const long m = pow_long(p, alpha);
  const Enveloping<S> env = make_enveloping(a);

  if constexpr (std::is_same_v<S, Rational>) {
    // defense: hyperbolic classes must land on the neutral element, otherwise
    // reducing by them below would be unsound
    const auto hyp_fp = fingerprint_of(env, hyperbolic(free_module(env.B, 1), env.swap()));
    if (!hyp_fp.signature || hyp_fp.signature->first != hyp_fp.signature->second)
      throw input_error("image order: hyperbolic class has nonzero signature");
    std::set<long> seen;
    for (long n = 0; n < m; ++n) {
      const auto gw = dold_extend_psi(env, k0_free_difference(a, static_cast<int>(n), 0));
      const auto f = fingerprint_of(env, gw);
      if (!f.signature) throw input_error("image order: signature pipeline unavailable");
      const long net = f.signature->first - f.signature->second;
      seen.insert(((net % m) + m) % m);
    }
    return static_cast<long>(seen.size());
  } else {
    const FieldDescriptor field = a->field;
    const auto pair_of_class = [&](long n) {
      const auto gw = dold_extend_psi(env, k0_free_difference(a, static_cast<int>(n), 0));
      WittPairFp acc{0, 1};
      for (const auto& h : gw.plus) {
        const auto f = detail::reduce_summand(env, h);
        acc = witt_add_fp(acc, witt_pair_fp(f.diag_rank, f.det_rep, field), field);
      }
      for (const auto& h : gw.minus) {
        // subtracting a Witt class adds its inverse; the inverse of (r, d) is
        // the class of the negated form: same parity, disc times (-1)^r
        const auto f = detail::reduce_summand(env, h);
        WittPairFp w = witt_pair_fp(f.diag_rank, f.det_rep, field);
        if (w.rank_parity == 1) {
          Fp d = field_traits<Fp>::from_int(-w.disc, field);
          w.disc = field_traits<Fp>::square_class_rep(d, field).value();
        }
        acc = witt_add_fp(acc, w, field);
      }
      return acc;
    };

    const auto hyb = detail::reduce_summand(env, hyperbolic(free_module(env.B, 1), env.swap()));
    if (!(witt_pair_fp(hyb.diag_rank, hyb.det_rep, field) == WittPairFp{0, 1}))
      throw input_error("image order: hyperbolic class is not neutral in the Witt group");

    // the four Witt classes over F_q
    std::vector<WittPairFp> group;
    const Fp one = field_traits<Fp>::from_int(1, field);
    const Fp ns = Fp::residue(field_traits<Fp>::smallest_nonresidue(field.characteristic),
                              field.characteristic);
    group.push_back({0, one.value()});
    group.push_back({0, ns.value()});
    group.push_back({1, one.value()});
    group.push_back({1, ns.value()});

    // subgroup of p^alpha-th multiples
    std::set<WittPairFp> sub;
    for (const auto& w : group) {
      WittPairFp acc{0, 1};
      for (long i = 0; i < m; ++i) acc = witt_add_fp(acc, w, field);
      sub.insert(acc);
    }
    const auto coset_key = [&](const WittPairFp& w) {
      WittPairFp best = witt_add_fp(w, *sub.begin(), field);
      for (const auto& h : sub) {
        const WittPairFp cand = witt_add_fp(w, h, field);
        if (cand < best) best = cand;
      }
      return best;
    };
    std::set<WittPairFp> cosets;
    for (long n = 0; n < m; ++n) cosets.insert(coset_key(pair_of_class(n)));
    return static_cast<long>(cosets.size());
  }
}

}  // namespace psiherm
