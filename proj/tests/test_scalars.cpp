// Exact scalar layer: rationals, prime fields, square classes.
// Derived expectations are recomputed here by brute force, never copied from
// the implementation under test.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "psiherm/fp.hpp"
#include "psiherm/rational.hpp"

using namespace psiherm;

namespace {

const FieldDescriptor kQ{FieldKind::rationals, 0};

FieldDescriptor fp(std::int64_t p) { return {FieldKind::prime_field, p}; }

// Independent oracle: x^{-1} in F_p by scanning all residues.
std::int64_t brute_inverse(std::int64_t x, std::int64_t p) {
  for (std::int64_t y = 1; y < p; ++y)
    if (x * y % p == 1) return y;
  return -1;
}

// Independent oracle: the set {y^2 mod p : y != 0}.
std::set<std::int64_t> brute_squares(std::int64_t p) {
  std::set<std::int64_t> s;
  for (std::int64_t y = 1; y < p; ++y) s.insert(y * y % p);
  return s;
}

}  // namespace

TEST_CASE("field descriptor syntax") {
  CHECK(parse_field_descriptor("Q").kind == FieldKind::rationals);
  CHECK(parse_field_descriptor("Fp:7").characteristic == 7);
  CHECK_THROWS_AS(parse_field_descriptor("Fp:2"), input_error);   // needs 1/2
  CHECK_THROWS_AS(parse_field_descriptor("Fp:9"), input_error);   // not prime
  CHECK_THROWS_AS(parse_field_descriptor("R"), input_error);
  CHECK(to_string(fp(101)) == "Fp:101");
}

TEST_CASE("rational arithmetic and parsing") {
  using FT = field_traits<Rational>;
  CHECK(make_rational(1, 2) + make_rational(1, 3) == make_rational(5, 6));
  CHECK(FT::parse("-3/2", kQ) == make_rational(-3, 2));
  CHECK(FT::parse("4/2", kQ) == Rational(2));           // canonicalized
  CHECK(FT::str(Rational(-3, 2)) == "-3/2");
  CHECK(FT::str(Rational(7)) == "7");
  CHECK_THROWS_AS(FT::parse("x", kQ), input_error);
  CHECK_THROWS_AS(FT::invert(Rational(0)), input_error);
}

TEST_CASE("prime field arithmetic matches brute force") {
  const std::int64_t p = 7;
  const auto d = fp(p);
  using FT = field_traits<Fp>;

  CHECK(FT::invert(Fp::residue(2, p)).value() == brute_inverse(2, p));
  CHECK(brute_inverse(2, p) == 4);  // frozen: 2*4 = 8 = 1 mod 7

  for (std::int64_t x = 1; x < p; ++x) {
    const Fp fx = Fp::residue(x, p);
    CHECK(fx * FT::invert(fx) == Fp::residue(1, p));
    CHECK(FT::invert(fx).value() == brute_inverse(x, p));
  }
  CHECK_THROWS_AS(FT::invert(Fp::residue(0, p)), input_error);
  CHECK(FT::parse("4 mod 7", d) == Fp::residue(4, p));
  CHECK(FT::parse("2/3", d) == Fp::residue(2, p) / Fp::residue(3, p));
  CHECK_THROWS_AS(FT::parse("4 mod 5", d), input_error);
  CHECK(FT::str(Fp::residue(4, p)) == "4 mod 7");
}

TEST_CASE("unbound literals bind on contact") {
  const Fp a = Fp::residue(3, 5);
  CHECK(a + Fp(0) == a);
  CHECK(a * Fp(1) == a);
  CHECK(Fp(7) + a == Fp::residue(0, 5));   // 7 binds to 2 mod 5
  CHECK(Fp(-1) * a == Fp::residue(2, 5));
  CHECK(Fp(3) == Fp(3));
}

TEST_CASE("field axioms on random triples") {
  // cheap LCG; exactness means one failure would be deterministic anyway
  std::uint64_t state = 12345;
  auto nxt = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a = make_rational(static_cast<long>(nxt() % 19) - 9, static_cast<long>(nxt() % 7) + 1);
    const Rational b = make_rational(static_cast<long>(nxt() % 19) - 9, static_cast<long>(nxt() % 7) + 1);
    const Rational c = make_rational(static_cast<long>(nxt() % 19) - 9, static_cast<long>(nxt() % 7) + 1);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));

    const std::int64_t p = 13;
    const Fp x = Fp::residue(static_cast<std::int64_t>(nxt()), p);
    const Fp y = Fp::residue(static_cast<std::int64_t>(nxt()), p);
    const Fp z = Fp::residue(static_cast<std::int64_t>(nxt()), p);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("square classes over F_p agree with residue enumeration") {
  using FT = field_traits<Fp>;
  for (std::int64_t p : {3, 5, 7, 11, 13, 101}) {
    const auto d = fp(p);
    const auto squares = brute_squares(p);
    CHECK(static_cast<std::int64_t>(squares.size()) == (p - 1) / 2);
    for (std::int64_t x = 1; x < p; ++x) {
      const bool is_sq = squares.count(x) > 0;
      const Fp rep = FT::square_class_rep(Fp::residue(x, p), d);
      CHECK(rep == (is_sq ? Fp::residue(1, p)
                          : Fp::residue(FT::smallest_nonresidue(p), p)));
    }
    CHECK(FT::square_class_rep(Fp::residue(0, p), d) == Fp::residue(0, p));
  }
  // frozen instance: 2 = 3^2 mod 7 is a square
  CHECK(field_traits<Fp>::square_class_rep(Fp::residue(2, 7), fp(7)) == Fp::residue(1, 7));
}

TEST_CASE("square classes over Q are signed squarefree parts") {
  using FT = field_traits<Rational>;
  CHECK(FT::square_class_rep(Rational(8), kQ) == Rational(2));       // 8 = 2 * 2^2
  CHECK(FT::square_class_rep(Rational(-12), kQ) == Rational(-3));
  CHECK(FT::square_class_rep(Rational(45), kQ) == Rational(5));
  CHECK(FT::square_class_rep(Rational(1), kQ) == Rational(1));
  CHECK(FT::square_class_rep(Rational(0), kQ) == Rational(0));
  CHECK(FT::square_class_rep(make_rational(3, 4), kQ) == Rational(3));  // 3/4 ~ 3
  CHECK(FT::square_class_rep(make_rational(2, 3), kQ) == Rational(6));  // 2/3 ~ 6

  // invariance under multiplication by squares
  std::uint64_t state = 99;
  auto nxt = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int trial = 0; trial < 100; ++trial) {
    const Rational x = make_rational(static_cast<long>(nxt() % 41) - 20, static_cast<long>(nxt() % 9) + 1);
    const Rational y = make_rational(static_cast<long>(nxt() % 15) + 1, static_cast<long>(nxt() % 5) + 1);
    if (sgn(x) == 0) continue;
    CHECK(FT::square_class_rep(x * y * y, kQ) == FT::square_class_rep(x, kQ));
  }
}
