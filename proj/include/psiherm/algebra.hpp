#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psiherm/field.hpp"
#include "psiherm/linalg.hpp"
#include "psiherm/rng.hpp"

namespace psiherm {

/// k-linear map T with T(1) = 1, T^2 = id, T(xy) = T(y)T(x).  On a commutative
/// algebra antiautomorphisms and automorphisms coincide.
template <typename S>
struct Involution {
  std::string name;
  Mat<S> mat;  // action on coordinates
};

/// Finite-dimensional unital associative k-algebra by structure constants.
/// table[i*dim + j] lists the nonzero coordinates of e_i * e_j in ascending
/// basis order; products stay sparse for matrix-unit style bases.
template <typename S>
struct Algebra {
  FieldDescriptor field;
  std::string name;
  int dim = 0;
  std::vector<std::string> basis;
  std::vector<std::vector<std::pair<int, S>>> table;
  Vec<S> unit;
  bool commutative = false;
  std::vector<Involution<S>> involutions;  // declared, validated, order matters

  const std::vector<std::pair<int, S>>& product_row(int i, int j) const {
    return table[static_cast<std::size_t>(i) * dim + j];
  }
};

template <typename S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

// ---------------------------------------------------------------------------
// Element arithmetic
// ---------------------------------------------------------------------------

template <typename S>
Vec<S> basis_element(const Algebra<S>& a, int i) {
  Vec<S> v = Vec<S>::Zero(a.dim);
  v(i) = S(1);
  return v;
}

template <typename S>
Vec<S> mul(const Algebra<S>& a, const Vec<S>& x, const Vec<S>& y) {
  Vec<S> out = Vec<S>::Zero(a.dim);
  for (int i = 0; i < a.dim; ++i) {
    if (is_zero_scalar(x(i))) continue;
    for (int j = 0; j < a.dim; ++j) {
      if (is_zero_scalar(y(j))) continue;
      const S c = x(i) * y(j);
      for (const auto& [l, s] : a.product_row(i, j)) out(l) = out(l) + c * s;
    }
  }
  return out;
}

/// Matrix of y -> x*y; a ring homomorphism into M_d(k), so ranks and
/// invertibility of elements reduce to plain linear algebra.
template <typename S>
Mat<S> left_regular(const Algebra<S>& a, const Vec<S>& x) {
  Mat<S> m = Mat<S>::Zero(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) {
    if (is_zero_scalar(x(i))) continue;
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [l, s] : a.product_row(i, j)) m(l, j) = m(l, j) + x(i) * s;
  }
  return m;
}

/// Trace of left multiplication by x: the k-linear trace form ingredient.
template <typename S>
S trace_of(const Algebra<S>& a, const Vec<S>& x) {
  S t = S(0);
  for (int i = 0; i < a.dim; ++i) {
    if (is_zero_scalar(x(i))) continue;
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [l, s] : a.product_row(i, j))
        if (l == j) t = t + x(i) * s;
  }
  return t;
}

template <typename S>
std::optional<Vec<S>> invert_element(const Algebra<S>& a, const Vec<S>& x) {
  const auto sol = solve_linear(left_regular(a, x), Vec<S>(a.unit));
  if (!sol) return std::nullopt;
  if (mul(a, *sol, x) != a.unit) return std::nullopt;  // two-sided check
  return sol;
}

template <typename S>
Vec<S> apply_involution(const Involution<S>& t, const Vec<S>& x) {
  return t.mat * x;
}

// ---------------------------------------------------------------------------
// Validation: exhaustive over basis tuples (dims stay small by construction)
// ---------------------------------------------------------------------------

template <typename S>
void validate_algebra(const Algebra<S>& a) {
  if (a.dim <= 0) throw input_error("algebra '" + a.name + "': dimension must be positive");
  if (static_cast<int>(a.basis.size()) != a.dim ||
      static_cast<int>(a.table.size()) != a.dim * a.dim || a.unit.size() != a.dim)
    throw input_error("algebra '" + a.name + "': shape mismatch between dim, basis, table, unit");

  for (int i = 0; i < a.dim; ++i) {
    const Vec<S> ei = basis_element(a, i);
    if (mul(a, Vec<S>(a.unit), ei) != ei || mul(a, ei, Vec<S>(a.unit)) != ei)
      throw input_error("algebra '" + a.name + "': unit law fails at basis element " +
                        a.basis[i]);
  }
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int l = 0; l < a.dim; ++l) {
        const Vec<S> ei = basis_element(a, i), ej = basis_element(a, j), el = basis_element(a, l);
        if (mul(a, mul(a, ei, ej), el) != mul(a, ei, mul(a, ej, el)))
          throw input_error("algebra '" + a.name + "': associativity fails on (" + a.basis[i] +
                            ", " + a.basis[j] + ", " + a.basis[l] + ")");
      }
}

template <typename S>
bool compute_commutative(const Algebra<S>& a) {
  for (int i = 0; i < a.dim; ++i)
    for (int j = i + 1; j < a.dim; ++j)
      if (mul(a, basis_element(a, i), basis_element(a, j)) !=
          mul(a, basis_element(a, j), basis_element(a, i)))
        return false;
  return true;
}

template <typename S>
void validate_involution(const Algebra<S>& a, const Involution<S>& t) {
  if (t.mat.rows() != a.dim || t.mat.cols() != a.dim)
    throw input_error("involution '" + t.name + "' on '" + a.name + "': wrong shape");
  if (Vec<S>(t.mat * a.unit) != a.unit)
    throw input_error("involution '" + t.name + "' on '" + a.name + "': does not fix 1");
  if (Mat<S>(t.mat * t.mat) != Mat<S>(Mat<S>::Identity(a.dim, a.dim)))
    throw input_error("involution '" + t.name + "' on '" + a.name + "': not self-inverse");
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Vec<S> lhs = t.mat * mul(a, basis_element(a, i), basis_element(a, j));
      const Vec<S> rhs = mul(a, Vec<S>(t.mat.col(j)), Vec<S>(t.mat.col(i)));
      if (lhs != rhs)
        throw input_error("involution '" + t.name + "' on '" + a.name +
                          "': not antimultiplicative on (" + a.basis[i] + ", " + a.basis[j] + ")");
    }
}

/// Builds, validates and freezes an algebra.  Constants are dense:
/// constants[i*dim + j] = coordinates of e_i * e_j.
template <typename S>
AlgebraPtr<S> make_algebra(FieldDescriptor field, std::string name,
                           std::vector<std::string> basis_labels,
                           const std::vector<Vec<S>>& constants, Vec<S> unit,
                           std::vector<Involution<S>> involutions = {}) {
  auto a = std::make_shared<Algebra<S>>();
  a->field = field;
  a->name = std::move(name);
  a->dim = static_cast<int>(basis_labels.size());
  a->basis = std::move(basis_labels);
  a->unit = std::move(unit);
  a->table.resize(constants.size());
  for (std::size_t idx = 0; idx < constants.size(); ++idx) {
    const Vec<S>& row = constants[idx];
    for (int l = 0; l < row.size(); ++l)
      if (!is_zero_scalar(row(l))) a->table[idx].emplace_back(l, row(l));
  }
  validate_algebra(*a);
  a->commutative = compute_commutative(*a);
  for (auto& t : involutions) validate_involution(*a, t);
  a->involutions = std::move(involutions);
  return a;
}

template <typename S>
Involution<S> identity_involution(const Algebra<S>& a) {
  return {"id", Mat<S>::Identity(a.dim, a.dim)};
}

/// Structural identity: same field, table and unit.  Handles built separately
/// (e.g. A^op of a commutative A, or B rebuilt twice) compare equal.
template <typename S>
bool same_structure(const Algebra<S>& a, const Algebra<S>& b) {
  if (!(a.field == b.field) || a.dim != b.dim) return false;
  if (Vec<S>(a.unit) != Vec<S>(b.unit)) return false;
  for (int i = 0; i < a.dim * a.dim; ++i) {
    const auto &ra = a.table[i], &rb = b.table[i];
    if (ra.size() != rb.size()) return false;
    for (std::size_t t = 0; t < ra.size(); ++t)
      if (ra[t].first != rb[t].first || !(ra[t].second == rb[t].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Opposite and tensor algebras; the enveloping algebra B = A (x) A^op with its
// factor-swapping antiinvolution.
// ---------------------------------------------------------------------------

template <typename S>
AlgebraPtr<S> opposite(const AlgebraPtr<S>& a) {
  auto op = std::make_shared<Algebra<S>>(*a);
  op->name = a->name + "^op";
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < a->dim; ++j)
      op->table[static_cast<std::size_t>(i) * a->dim + j] = a->product_row(j, i);
  // an antiautomorphism of A is one of A^op with the same matrix
  return op;
}

/// Row-major index of e_i (x) f_j in A (x) A'; fixed so Grams are reproducible.
inline int tensor_index(int i, int j, int dim_second) { return i * dim_second + j; }

template <typename S>
AlgebraPtr<S> tensor_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  if (!(a->field == b->field)) throw input_error("tensor algebra: base field mismatch");
  auto t = std::make_shared<Algebra<S>>();
  t->field = a->field;
  t->name = a->name + " (x) " + b->name;
  t->dim = a->dim * b->dim;
  t->basis.reserve(t->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j) t->basis.push_back(a->basis[i] + "(x)" + b->basis[j]);
  t->table.resize(static_cast<std::size_t>(t->dim) * t->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j)
      for (int k = 0; k < a->dim; ++k)
        for (int l = 0; l < b->dim; ++l) {
          auto& row = t->table[static_cast<std::size_t>(tensor_index(i, j, b->dim)) * t->dim +
                               tensor_index(k, l, b->dim)];
          for (const auto& [p, sa] : a->product_row(i, k))
            for (const auto& [q, sb] : b->product_row(j, l))
              row.emplace_back(tensor_index(p, q, b->dim), sa * sb);
          std::sort(row.begin(), row.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
        }
  Vec<S> unit = Vec<S>::Zero(t->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j) {
      const S u = a->unit(i) * b->unit(j);
      if (!is_zero_scalar(u)) unit(tensor_index(i, j, b->dim)) = u;
    }
  t->unit = std::move(unit);
  validate_algebra(*t);
  t->commutative = compute_commutative(*t);
  return t;
}

template <typename S>
Involution<S> swap_antiinvolution(const Algebra<S>& tensor_of_a_with_aop, int dim_a) {
  const int d = dim_a;
  if (tensor_of_a_with_aop.dim != d * d)
    throw std::logic_error("swap involution: dimension is not a square");
  Mat<S> m = Mat<S>::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(tensor_index(j, i, d), tensor_index(i, j, d)) = S(1);
  return {"swap", std::move(m)};
}

/// A, A^op and B = A (x) A^op bundled with the swap antiinvolution; every
/// construction over B flows through one of these.
template <typename S>
struct Enveloping {
  AlgebraPtr<S> A;
  AlgebraPtr<S> Aop;
  AlgebraPtr<S> B;
  int swap_index = 0;

  const Involution<S>& swap() const { return B->involutions[swap_index]; }

  /// iota_B(a, b) = a (x) b, row-major coordinates.
  Vec<S> embed(const Vec<S>& a, const Vec<S>& b) const {
    Vec<S> v = Vec<S>::Zero(B->dim);
    for (int i = 0; i < A->dim; ++i) {
      if (is_zero_scalar(a(i))) continue;
      for (int j = 0; j < A->dim; ++j)
        if (!is_zero_scalar(b(j))) v(tensor_index(i, j, A->dim)) = a(i) * b(j);
    }
    return v;
  }
};

template <typename S>
Enveloping<S> make_enveloping(const AlgebraPtr<S>& a) {
  Enveloping<S> env;
  env.A = a;
  env.Aop = opposite(a);
  auto b = tensor_algebra(a, env.Aop);
  auto swap = swap_antiinvolution(*b, a->dim);
  validate_involution(*b, swap);
  auto owned = std::const_pointer_cast<Algebra<S>>(b);
  owned->involutions.push_back(std::move(swap));
  env.B = b;
  env.swap_index = static_cast<int>(b->involutions.size()) - 1;
  return env;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

template <typename S>
struct AlgebraMorphism {
  AlgebraPtr<S> source;
  AlgebraPtr<S> target;
  Mat<S> mat;

  Vec<S> apply(const Vec<S>& x) const { return mat * x; }
};

template <typename S>
void validate_morphism(const AlgebraMorphism<S>& m) {
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (m.mat.rows() != t.dim || m.mat.cols() != s.dim)
    throw input_error("algebra morphism: wrong shape");
  if (Vec<S>(m.mat * s.unit) != t.unit)
    throw input_error("algebra morphism: does not preserve the unit");
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) {
      const Vec<S> lhs = m.mat * mul(s, basis_element(s, i), basis_element(s, j));
      const Vec<S> rhs = mul(t, Vec<S>(m.mat.col(i)), Vec<S>(m.mat.col(j)));
      if (lhs != rhs)
        throw input_error("algebra morphism: not multiplicative on (" + s.basis[i] + ", " +
                          s.basis[j] + ")");
    }
}

/// mu: B -> A, a (x) b -> a * sigma(b).  Multiplicative only when A is
/// commutative, which is enforced rather than extended.
template <typename S>
AlgebraMorphism<S> mult_morphism(const Enveloping<S>& env, const Involution<S>& sigma) {
  const auto& a = *env.A;
  if (!a.commutative)
    throw input_error("mult morphism requires a commutative algebra, got '" + a.name + "'");
  Mat<S> m(a.dim, a.dim * a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      m.col(tensor_index(i, j, a.dim)) =
          mul(a, basis_element(a, i), Vec<S>(sigma.mat.col(j)));
  AlgebraMorphism<S> mu{env.B, env.A, std::move(m)};
  validate_morphism(mu);
  return mu;
}

/// mu is involution-compatible when mu . bar = sigma . mu.
template <typename S>
bool intertwines(const AlgebraMorphism<S>& mu, const Involution<S>& bar_source,
                 const Involution<S>& sigma_target) {
  return Mat<S>(mu.mat * bar_source.mat) == Mat<S>(sigma_target.mat * mu.mat);
}

template <typename S>
int fixed_space_dimension(const Algebra<S>& a, const Involution<S>& t) {
  return a.dim - rank_of(Mat<S>(t.mat - Mat<S>::Identity(a.dim, a.dim)));
}

// ---------------------------------------------------------------------------
// Random elements (deterministic given the rng)
// ---------------------------------------------------------------------------

template <typename S>
Vec<S> random_element(const Algebra<S>& a, DetRng& rng) {
  Vec<S> v(a.dim);
  for (int i = 0; i < a.dim; ++i) v(i) = random_scalar<S>(rng, a.field);
  return v;
}

/// Random unit with exact inverse; falls back to a nonzero multiple of 1
/// when rejection sampling runs out of luck.
template <typename S>
std::pair<Vec<S>, Vec<S>> random_unit(const Algebra<S>& a, DetRng& rng) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    const Vec<S> x = random_element(a, rng);
    if (const auto inv = invert_element(a, x)) return {x, *inv};
  }
  const S c = random_nonzero_scalar<S>(rng, a.field);
  const S cinv = field_traits<S>::invert(c);
  return {Vec<S>(c * a.unit), Vec<S>(cinv * a.unit)};
}

}  // namespace psiherm
