#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "psiherm/field.hpp"

namespace psiherm {

/// Residue in F_p with the modulus carried at runtime.
///
/// Generic code (Eigen kernels, templated linear algebra) constructs scalars
/// as Fp(0) or Fp(1) with no way to know p, so a scalar with p == 0 is an
/// "unbound" integer literal; it binds to a modulus the first time it meets a
/// bound value.  All data originating from an algebra or a file is bound.
/// p is an odd prime < 2^31, so products of residues fit in int64.
class Fp {
 public:
  Fp() = default;
  Fp(int v) : v_(v) {}                 // NOLINT: implicit by design (generic literals)
  Fp(std::int64_t v) : v_(v) {}        // NOLINT

  static Fp residue(std::int64_t v, std::int64_t p) {
    Fp r;
    r.p_ = p;
    r.v_ = ((v % p) + p) % p;
    return r;
  }

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }

  friend Fp operator+(Fp a, Fp b) { align(a, b); return a.p_ ? residue(a.v_ + b.v_, a.p_) : Fp(a.v_ + b.v_); }
  friend Fp operator-(Fp a, Fp b) { align(a, b); return a.p_ ? residue(a.v_ - b.v_, a.p_) : Fp(a.v_ - b.v_); }
  friend Fp operator*(Fp a, Fp b) { align(a, b); return a.p_ ? residue(a.v_ * b.v_, a.p_) : Fp(a.v_ * b.v_); }
  friend Fp operator-(Fp a) { return a.p_ ? residue(-a.v_, a.p_) : Fp(-a.v_); }

  friend Fp operator/(Fp a, Fp b) {
    align(a, b);
    return a * b.inverse();
  }

  Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
  Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
  Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
  Fp& operator/=(const Fp& o) { *this = *this / o; return *this; }

  Fp inverse() const {
    if (!p_) {
      if (v_ == 1 || v_ == -1) return *this;
      throw std::logic_error("Fp: inverse of unbound literal");
    }
    if (v_ == 0) throw input_error("division by zero in F_p");
    // extended Euclid on (v, p)
    std::int64_t t = 0, newt = 1, r = p_, newr = v_;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    return residue(t, p_);
  }

  friend bool operator==(Fp a, Fp b) {
    align(a, b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    if (x.p_) return os << x.v_ << " mod " << x.p_;
    return os << x.v_;
  }

 private:
  static void align(Fp& a, Fp& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0) { a = residue(a.v_, b.p_); return; }
    if (b.p_ == 0) { b = residue(b.v_, a.p_); return; }
    throw std::logic_error("Fp: mixing residues of different moduli");
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;  // 0 = unbound literal
};

}  // namespace psiherm

namespace Eigen {

template <>
struct NumTraits<psiherm::Fp> : GenericNumTraits<psiherm::Fp> {
  typedef psiherm::Fp Real;
  typedef psiherm::Fp NonInteger;
  typedef psiherm::Fp Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};

}  // namespace Eigen

namespace psiherm {

template <>
struct field_traits<Fp> {
  static bool matches(const FieldDescriptor& d) { return d.kind == FieldKind::prime_field; }

  static Fp from_int(std::int64_t v, const FieldDescriptor& d) {
    return Fp::residue(v, d.characteristic);
  }

  // Accepts "4", "-1", "2/3" (as 2 * 3^{-1}), "4 mod 7" (modulus must match).
  static Fp parse(const std::string& text, const FieldDescriptor& d) {
    const std::int64_t p = d.characteristic;
    std::string s = text;
    if (auto pos = s.find(" mod "); pos != std::string::npos) {
      std::int64_t q = 0;
      try {
        q = std::stoll(s.substr(pos + 5));
      } catch (const std::exception&) {
        throw input_error("cannot parse residue scalar '" + text + "'");
      }
      if (q != p)
        throw input_error("scalar '" + text + "' names modulus " + std::to_string(q) +
                          " but the field is F_" + std::to_string(p));
      s = s.substr(0, pos);
    }
    try {
      if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::int64_t num = std::stoll(s.substr(0, slash));
        const std::int64_t den = std::stoll(s.substr(slash + 1));
        return Fp::residue(num, p) / Fp::residue(den, p);
      }
      return Fp::residue(std::stoll(s), p);
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("cannot parse residue scalar '" + text + "'");
    }
  }

  static std::string str(const Fp& x) {
    return std::to_string(x.value()) + " mod " + std::to_string(x.modulus());
  }

  static bool is_zero(const Fp& x) { return x.value() == 0 || (x.bound() && x.value() % x.modulus() == 0); }

  static Fp invert(const Fp& x) { return x.inverse(); }

  /// Square class via Euler's criterion: 0, the class of 1, or the smallest
  /// quadratic nonresidue as the canonical nonsquare representative.
  static Fp square_class_rep(const Fp& x, const FieldDescriptor& d) {
    const std::int64_t p = d.characteristic;
    if (is_zero(x)) return Fp::residue(0, p);
    return euler_square(x.value() % p, p) ? Fp::residue(1, p)
                                          : Fp::residue(smallest_nonresidue(p), p);
  }

  static bool euler_square(std::int64_t v, std::int64_t p) {
    return powmod(v, (p - 1) / 2, p) == 1;
  }

  static std::int64_t smallest_nonresidue(std::int64_t p) {
    for (std::int64_t c = 2; c < p; ++c)
      if (!euler_square(c, p)) return c;
    throw std::logic_error("F_p with p odd has a nonresidue");
  }

  static std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
    }
    return r;
  }
};

}  // namespace psiherm
