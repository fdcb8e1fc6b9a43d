#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace psiherm {

/// Anything user-supplied that cannot be processed: malformed files, bad
/// descriptors, broken structure constants, unsupported requests.
/// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rationals, prime_field };

/// Base field of the whole stack: Q, or F_p with p an odd prime.
/// p < 2^31 so residue products fit in int64 arithmetic.
struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals;
  std::int64_t characteristic = 0;  // 0 for Q

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

inline bool is_prime64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Textual syntax shared by the CLI and algebra files: "Q" or "Fp:<prime>".
inline FieldDescriptor parse_field_descriptor(const std::string& text) {
  if (text == "Q") return {FieldKind::rationals, 0};
  if (text.rfind("Fp:", 0) == 0) {
    std::int64_t p = 0;
    try {
      p = std::stoll(text.substr(3));
    } catch (const std::exception&) {
      throw input_error("field descriptor: cannot parse characteristic in '" + text + "'");
    }
    if (p >= (std::int64_t(1) << 31))
      throw input_error("field descriptor: characteristic too large (must be < 2^31)");
    if (p < 3 || p % 2 == 0 || !is_prime64(p))
      throw input_error("field descriptor: characteristic must be an odd prime >= 3, got " +
                        std::to_string(p));
    return {FieldKind::prime_field, p};
  }
  throw input_error("field descriptor: expected \"Q\" or \"Fp:<prime>\", got '" + text + "'");
}

inline std::string to_string(const FieldDescriptor& f) {
  return f.kind == FieldKind::rationals ? std::string("Q")
                                        : "Fp:" + std::to_string(f.characteristic);
}

/// Per-scalar glue: parsing, printing, square classes.  Specialized for
/// Rational (rational.hpp) and Fp (fp.hpp).
template <typename S>
struct field_traits;

}  // namespace psiherm
