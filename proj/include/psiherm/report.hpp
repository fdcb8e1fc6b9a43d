#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "psiherm/ring_matrix.hpp"
#include "psiherm/rng.hpp"
#include "psiherm/suites.hpp"
#include "psiherm/version.hpp"
#include "psiherm/witt.hpp"

namespace psiherm {

inline std::string digest_hex(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

/// Scalars in reports are exact strings ("-3/2", "4 mod 7"); ring elements are
/// coordinate arrays over the declared basis.
template <typename S>
nlohmann::ordered_json scalar_coords_json(const Vec<S>& x) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (int i = 0; i < x.size(); ++i) out.push_back(field_traits<S>::str(x(i)));
  return out;
}

template <typename S>
nlohmann::ordered_json ring_mat_json(const RingMat<S>& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(scalar_coords_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::ordered_json fingerprint_json(const WittFingerprint& f) {
  nlohmann::ordered_json out;
  out["rank"] = f.rank;
  out["rank_is_k_dimension"] = f.rank_is_k_dimension;
  out["det_class"] = f.det_class;
  if (f.signature)
    out["signature"] = {f.signature->first, f.signature->second};
  else
    out["signature"] = nullptr;
  out["degenerate"] = f.degenerate;
  out["radical_dim"] = f.radical_dim;
  return out;
}

inline nlohmann::ordered_json suite_json(const SuiteResult& s) {
  nlohmann::ordered_json out;
  out["suite"] = s.name;
  out["status"] = !s.applicable ? "not-applicable" : (s.passed ? "pass" : "fail");
  out["checks"] = s.checks;
  if (!s.note.empty()) out["note"] = s.note;
  if (!s.witness.is_null()) out["witness"] = s.witness;
  return out;
}

/// Common head of every report: tool identity, schema, digested input echo.
inline nlohmann::ordered_json report_skeleton(const std::string& command,
                                              const std::string& algebra_spec,
                                              const std::string& algebra_text,
                                              const std::string& detail,
                                              std::uint64_t seed) {
  nlohmann::ordered_json r;
  r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  r["schema"] = 1;
  const std::string blob =
      command + '\n' + algebra_spec + '\n' + algebra_text + '\n' + detail + '\n' +
      std::to_string(seed);
  r["input"] = {{"digest", digest_hex(blob)},
                {"algebra", algebra_spec},
                {"command", command},
                {"detail", detail},
                {"seed", seed}};
  return r;
}

}  // namespace psiherm
