#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "psiherm/field.hpp"
#include "psiherm/fp.hpp"
#include "psiherm/rational.hpp"

namespace psiherm {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic randomness.  mt19937_64 has a standard-mandated sequence and
/// the bounded draw below avoids std::uniform_int_distribution, whose output
/// is implementation-defined; reports must be byte-identical across builds.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

/// Independent stream per purpose: same base seed, different tag.
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = fnv1a64(tag);
  h ^= base + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

/// Small random scalar: numerators in [-4,4] over denominators in [1,3] for Q,
/// uniform residue for F_p.
template <typename S>
S random_scalar(DetRng& rng, const FieldDescriptor& field);

template <>
inline Rational random_scalar<Rational>(DetRng& rng, const FieldDescriptor&) {
  return make_rational(static_cast<long>(rng.range(-4, 4)),
                       static_cast<long>(rng.range(1, 3)));
}

template <>
inline Fp random_scalar<Fp>(DetRng& rng, const FieldDescriptor& field) {
  return Fp::residue(static_cast<std::int64_t>(rng.below(
                         static_cast<std::uint64_t>(field.characteristic))),
                     field.characteristic);
}

template <typename S>
S random_nonzero_scalar(DetRng& rng, const FieldDescriptor& field) {
  for (;;) {
    S s = random_scalar<S>(rng, field);
    if (!field_traits<S>::is_zero(s)) return s;
  }
}

}  // namespace psiherm
