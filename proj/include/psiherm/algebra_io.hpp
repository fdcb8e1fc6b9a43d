#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "psiherm/algebra.hpp"
#include "psiherm/module.hpp"

namespace psiherm {

using ordered_json = nlohmann::ordered_json;

/// 1-based line and column of a byte offset, for parse diagnostics.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline ordered_json parse_json_document(const std::string& text, const std::string& source) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw input_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + e.what());
  }
}

namespace detail {

inline const ordered_json& require_key(const ordered_json& doc, const std::string& key,
                                       const std::string& source) {
  if (!doc.contains(key)) throw input_error(source + ": missing required key '" + key + "'");
  return doc.at(key);
}

template <typename S>
S parse_scalar_at(const ordered_json& node, const FieldDescriptor& field,
                  const std::string& where, const std::string& source) {
  if (!node.is_string())
    throw input_error(source + ": " + where + " must be a scalar string");
  try {
    return field_traits<S>::parse(node.get<std::string>(), field);
  } catch (const input_error& e) {
    throw input_error(source + ": " + where + ": " + e.what());
  }
}

template <typename S>
Vec<S> parse_scalar_row(const ordered_json& node, int d, const FieldDescriptor& field,
                        const std::string& where, const std::string& source) {
  if (!node.is_array() || static_cast<int>(node.size()) != d)
    throw input_error(source + ": " + where + " must be an array of " + std::to_string(d) +
                      " scalar strings");
  Vec<S> out(d);
  for (int k = 0; k < d; ++k)
    out(k) = parse_scalar_at<S>(node.at(k), field, where + "[" + std::to_string(k) + "]", source);
  return out;
}

}  // namespace detail

/// Reads just the field descriptor of an algebra-spec document, so the caller
/// can pick the scalar type before loading the rest.
inline FieldDescriptor peek_field(const std::string& text, const std::string& source) {
  const ordered_json doc = parse_json_document(text, source);
  if (!doc.is_object()) throw input_error(source + ": document must be a JSON object");
  const auto& f = detail::require_key(doc, "field", source);
  if (!f.is_string()) throw input_error(source + ": 'field' must be a string");
  return parse_field_descriptor(f.get<std::string>());
}

/// Loads a structure-constant algebra from a JSON document:
///   field      "Q" or "Fp:<p>"
///   dim        basis dimension
///   basis      array of dim labels
///   constants  dim x dim x dim scalar strings, constants[i][j] = coords of e_i * e_j
///   unit       array of dim scalar strings
///   involution optional dim x dim matrix, entry [r][c] = coefficient of e_r in the
///              image of e_c
///   name       optional display name (defaults to the source label)
/// The result is fully validated: unit law, associativity, involution axioms.
template <typename S>
AlgebraPtr<S> load_algebra(const std::string& text, const std::string& source) {
  const ordered_json doc = parse_json_document(text, source);
  if (!doc.is_object()) throw input_error(source + ": document must be a JSON object");

  const auto& fnode = detail::require_key(doc, "field", source);
  if (!fnode.is_string()) throw input_error(source + ": 'field' must be a string");
  const FieldDescriptor field = parse_field_descriptor(fnode.get<std::string>());
  if (!field_traits<S>::matches(field))
    throw input_error(source + ": field '" + fnode.get<std::string>() +
                      "' does not match the requested scalar type");

  const auto& dnode = detail::require_key(doc, "dim", source);
  if (!dnode.is_number_integer() || dnode.get<int>() < 1 || dnode.get<int>() > 16)
    throw input_error(source + ": 'dim' must be an integer in [1, 16]");
  const int d = dnode.get<int>();

  const auto& bnode = detail::require_key(doc, "basis", source);
  if (!bnode.is_array() || static_cast<int>(bnode.size()) != d)
    throw input_error(source + ": 'basis' must be an array of " + std::to_string(d) +
                      " labels");
  std::vector<std::string> labels;
  for (const auto& l : bnode) {
    if (!l.is_string()) throw input_error(source + ": basis labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  const auto& cnode = detail::require_key(doc, "constants", source);
  if (!cnode.is_array() || static_cast<int>(cnode.size()) != d)
    throw input_error(source + ": 'constants' must be a " + std::to_string(d) + "x" +
                      std::to_string(d) + "x" + std::to_string(d) + " array");
  std::vector<Vec<S>> table;
  table.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    const auto& row = cnode.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw input_error(source + ": constants[" + std::to_string(i) + "] must hold " +
                        std::to_string(d) + " product rows");
    for (int j = 0; j < d; ++j)
      table.push_back(detail::parse_scalar_row<S>(
          row.at(j), d, field,
          "constants[" + std::to_string(i) + "][" + std::to_string(j) + "]", source));
  }

  const Vec<S> unit = detail::parse_scalar_row<S>(detail::require_key(doc, "unit", source), d,
                                                  field, "unit", source);

  std::string name = source;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw input_error(source + ": 'name' must be a string");
    name = doc.at("name").get<std::string>();
  }

  std::vector<Involution<S>> involutions;
  if (doc.contains("involution")) {
    const auto& inode = doc.at("involution");
    if (!inode.is_array() || static_cast<int>(inode.size()) != d)
      throw input_error(source + ": 'involution' must be a " + std::to_string(d) + "x" +
                        std::to_string(d) + " matrix of scalar strings");
    Mat<S> m(d, d);
    for (int r = 0; r < d; ++r) {
      const Vec<S> row = detail::parse_scalar_row<S>(
          inode.at(r), d, field, "involution[" + std::to_string(r) + "]", source);
      for (int c = 0; c < d; ++c) m(r, c) = row(c);
    }
    involutions.push_back({"file", m});
  }

  // identity is an antiautomorphism exactly when the product is commutative;
  // declare it first, matching the builtin convention
  auto a = make_algebra<S>(field, name, labels, table, unit, involutions);
  if (a->commutative) {
    std::vector<Involution<S>> with_id;
    with_id.push_back(identity_involution(*a));
    for (const auto& t : a->involutions) with_id.push_back(t);
    a = make_algebra<S>(field, name, labels, table, unit, with_id);
  }
  return a;
}

/// Loads a square matrix over the algebra from a JSON document:
///   ambient  side length n
///   entries  n x n array, each entry an array of dim scalar strings
/// The caller decides what the matrix must satisfy (e.g. idempotency).
template <typename S>
RingMat<S> load_ring_matrix(const std::string& text, const std::string& source,
                            const AlgebraPtr<S>& a) {
  const ordered_json doc = parse_json_document(text, source);
  if (!doc.is_object()) throw input_error(source + ": document must be a JSON object");
  const auto& nnode = detail::require_key(doc, "ambient", source);
  if (!nnode.is_number_integer() || nnode.get<int>() < 0 || nnode.get<int>() > 64)
    throw input_error(source + ": 'ambient' must be an integer in [0, 64]");
  const int n = nnode.get<int>();
  const auto& enode = detail::require_key(doc, "entries", source);
  if (!enode.is_array() || static_cast<int>(enode.size()) != n)
    throw input_error(source + ": 'entries' must be an " + std::to_string(n) + "x" +
                      std::to_string(n) + " array");
  RingMat<S> m(a, n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = enode.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw input_error(source + ": entries[" + std::to_string(i) + "] must hold " +
                        std::to_string(n) + " ring elements");
    for (int j = 0; j < n; ++j)
      m.at(i, j) = detail::parse_scalar_row<S>(
          row.at(j), a->dim, a->field,
          "entries[" + std::to_string(i) + "][" + std::to_string(j) + "]", source);
  }
  return m;
}

}  // namespace psiherm
