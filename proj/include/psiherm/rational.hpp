#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <string>

#include "psiherm/field.hpp"

namespace psiherm {

/// Exact rational scalar.  GMP's mpq functions assume canonical form (gcd = 1,
/// positive denominator) and the two-argument mpq_class constructor does NOT
/// canonicalize, so construction from a fraction must go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace psiherm

namespace Eigen {

// Adapter so Matrix<mpq_class> instantiates; only coefficient-wise paths are
// ever used (no decompositions over this scalar).
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace psiherm {

namespace detail {

/// Signed squarefree part of a nonzero integer n: sign(n) * product of the
/// primes dividing |n| to an odd power.  Trial division up to 10^6, then the
/// leftover cofactor must be a perfect square or a prime; anything harder is
/// refused rather than guessed.
inline mpz_class signed_squarefree_part(mpz_class n) {
  const int sign = sgn(n) < 0 ? -1 : 1;
  mpz_class m = abs(n);
  mpz_class out = 1;
  auto strip = [&](const mpz_class& p) {
    bool odd = false;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
      odd = !odd;
    }
    if (odd) out *= p;
  };
  strip(2);
  for (mpz_class d = 3; d * d <= m && d < 1000000; d += 2) strip(d);
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      // even power, contributes nothing
    } else if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      out *= m;
    } else {
      throw input_error("square class over Q: cofactor " + m.get_str() +
                        " resists factorization");
    }
  }
  return sign * out;
}

}  // namespace detail

template <>
struct field_traits<Rational> {
  static bool matches(const FieldDescriptor& d) { return d.kind == FieldKind::rationals; }

  static Rational from_int(std::int64_t v, const FieldDescriptor&) {
    return Rational(static_cast<long>(v));
  }

  // Accepts "3", "-3/2"; everything else is rejected with the offending text.
  static Rational parse(const std::string& text, const FieldDescriptor&) {
    try {
      Rational q(text);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw input_error("cannot parse rational scalar '" + text + "'");
    }
  }

  static std::string str(const Rational& x) { return x.get_str(); }

  static bool is_zero(const Rational& x) { return sgn(x) == 0; }

  static int sign(const Rational& x) { return sgn(x); }

  static Rational invert(const Rational& x) {
    if (is_zero(x)) throw input_error("division by zero in Q");
    return 1 / x;
  }

  /// Canonical representative of x modulo nonzero squares: the signed
  /// squarefree integer part (n/d ~ n*d mod squares); 0 maps to 0.
  static Rational square_class_rep(const Rational& x, const FieldDescriptor&) {
    if (is_zero(x)) return Rational(0);
    return Rational(detail::signed_squarefree_part(x.get_num() * x.get_den()));
  }
};

}  // namespace psiherm
