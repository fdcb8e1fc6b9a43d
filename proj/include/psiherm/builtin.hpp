#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "psiherm/algebra.hpp"
#include "psiherm/field.hpp"

namespace psiherm {

// ---------------------------------------------------------------------------
// Algebra constructors.  Every builtin below is assembled from these, and the
// tests exercise them at other parameters too.
// ---------------------------------------------------------------------------

/// The base field as a one-dimensional algebra over itself.
template <typename S>
AlgebraPtr<S> field_algebra(const FieldDescriptor& field, const std::string& name) {
  const S one = field_traits<S>::from_int(1, field);
  Vec<S> unit(1);
  unit(0) = one;
  std::vector<Vec<S>> constants(1);
  constants[0] = unit;
  return make_algebra<S>(field, name, {"1"}, constants, unit,
                         {{"id", Mat<S>::Identity(1, 1)}});
}

/// n x n matrices on the basis of matrix units, row-major: E_ij at i*n + j.
/// Declared involution: transpose, E_ij -> E_ji.
template <typename S>
AlgebraPtr<S> matrix_algebra(const FieldDescriptor& field, int n, const std::string& name) {
  if (n < 1 || n > 4) throw input_error("matrix algebra: size must be between 1 and 4");
  const S one = field_traits<S>::from_int(1, field);
  const int d = n * n;
  std::vector<std::string> labels;
  labels.reserve(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<Vec<S>> constants(static_cast<std::size_t>(d) * d, Vec<S>::Zero(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (j == k)  // E_ij * E_kl = [j = k] E_il
            constants[static_cast<std::size_t>(i * n + j) * d + (k * n + l)](i * n + l) = one;
  Vec<S> unit = Vec<S>::Zero(d);
  for (int i = 0; i < n; ++i) unit(i * n + i) = one;
  Mat<S> transpose_mat = Mat<S>::Zero(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) transpose_mat(j * n + i, i * n + j) = one;
  return make_algebra<S>(field, name, labels, constants, unit,
                         {{"transpose", std::move(transpose_mat)}});
}

/// Group algebra of the cyclic group C_m on the basis 1, g, ..., g^{m-1}.
/// Declared involutions: identity and the group inversion g -> g^{m-1}.
template <typename S>
AlgebraPtr<S> group_algebra(const FieldDescriptor& field, int m, const std::string& name) {
  if (m < 1 || m > 6) throw input_error("group algebra: order must be between 1 and 6");
  const S one = field_traits<S>::from_int(1, field);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int i = 0; i < m; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g^" + std::to_string(i)));
  std::vector<Vec<S>> constants(static_cast<std::size_t>(m) * m, Vec<S>::Zero(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) constants[static_cast<std::size_t>(i) * m + j]((i + j) % m) = one;
  Vec<S> unit = Vec<S>::Zero(m);
  unit(0) = one;
  Mat<S> inv_mat = Mat<S>::Zero(m, m);
  for (int i = 0; i < m; ++i) inv_mat((m - i) % m, i) = one;
  std::vector<Involution<S>> invs;
  invs.push_back({"id", Mat<S>::Identity(m, m)});
  if (m > 1) invs.push_back({"inv", std::move(inv_mat)});
  return make_algebra<S>(field, name, labels, constants, unit, std::move(invs));
}

/// Q adjoined a square root of -1, basis 1, i.  Declared involutions:
/// identity and conjugation i -> -i.
inline AlgebraPtr<Rational> gaussian_algebra() {
  const FieldDescriptor field{FieldKind::rationals, 0};
  const Rational one(1);
  std::vector<Vec<Rational>> constants(4, Vec<Rational>::Zero(2));
  constants[0](0) = one;    // 1*1 = 1
  constants[1](1) = one;    // 1*i = i
  constants[2](1) = one;    // i*1 = i
  constants[3](0) = -one;   // i*i = -1
  Vec<Rational> unit = Vec<Rational>::Zero(2);
  unit(0) = one;
  Mat<Rational> conj = Mat<Rational>::Identity(2, 2);
  conj(1, 1) = -one;
  return make_algebra<Rational>(field, "Qi", {"1", "i"}, constants, unit,
                                {{"id", Mat<Rational>::Identity(2, 2)}, {"conj", std::move(conj)}});
}

/// The split quadratic algebra k x k on its idempotent basis u, v.
/// Declared involutions: identity and the factor swap u <-> v.
template <typename S>
AlgebraPtr<S> product_algebra(const FieldDescriptor& field, const std::string& name) {
  const S one = field_traits<S>::from_int(1, field);
  std::vector<Vec<S>> constants(4, Vec<S>::Zero(2));
  constants[0](0) = one;  // u*u = u
  constants[3](1) = one;  // v*v = v
  Vec<S> unit(2);
  unit(0) = one;
  unit(1) = one;
  Mat<S> swap = Mat<S>::Zero(2, 2);
  swap(0, 1) = one;
  swap(1, 0) = one;
  return make_algebra<S>(field, name, {"u", "v"}, constants, unit,
                         {{"id", Mat<S>::Identity(2, 2)}, {"swap", std::move(swap)}});
}

// ---------------------------------------------------------------------------
// Builtin registry
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"Q", "F5", "F7", "M2Q", "QC3", "Qi", "QxQ"};
  return names;
}

inline FieldDescriptor builtin_field_descriptor(const std::string& name) {
  if (name == "Q" || name == "M2Q" || name == "QC3" || name == "Qi" || name == "QxQ")
    return {FieldKind::rationals, 0};
  if (name == "F5") return {FieldKind::prime_field, 5};
  if (name == "F7") return {FieldKind::prime_field, 7};
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw input_error("unknown builtin algebra '" + name + "' (known: " + known + ")");
}

template <typename S>
AlgebraPtr<S> builtin_algebra(const std::string& name) {
  const FieldDescriptor field = builtin_field_descriptor(name);
  if (!field_traits<S>::matches(field))
    throw input_error("builtin algebra '" + name + "' lives over " + to_string(field) +
                      ", requested scalar type does not match");
  if constexpr (std::is_same_v<S, Rational>) {
    if (name == "Q") return field_algebra<Rational>(field, "Q");
    if (name == "M2Q") return matrix_algebra<Rational>(field, 2, "M2Q");
    if (name == "QC3") return group_algebra<Rational>(field, 3, "QC3");
    if (name == "Qi") return gaussian_algebra();
    if (name == "QxQ") return product_algebra<Rational>(field, "QxQ");
  } else {
    if (name == "F5") return field_algebra<S>(field, "F5");
    if (name == "F7") return field_algebra<S>(field, "F7");
  }
  throw input_error("unknown builtin algebra '" + name + "'");
}

}  // namespace psiherm
