#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <vector>

#include "doctest.h"
#include "psiherm/builtin.hpp"
#include "psiherm/rng.hpp"
#include "psiherm/witt.hpp"

using namespace psiherm;

namespace {

Mat<Rational> qmat(int n, std::initializer_list<int> vals) {
  Mat<Rational> m(n, n);
  int k = 0;
  for (auto v : vals) m(k / n, k % n) = Rational(v), ++k;
  return m;
}

// random invertible matrix over the field, built from elementary row operations
template <typename S>
Mat<S> random_invertible(int n, const FieldDescriptor& field, DetRng& rng) {
  Mat<S> p = Mat<S>::Identity(n, n);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = static_cast<int>(rng.below(n));
    const int j = static_cast<int>(rng.below(n));
    switch (rng.below(3)) {
      case 0:
        if (i != j) {
          const S c = random_scalar<S>(rng, field);
          p.row(i) += c * p.row(j);
        }
        break;
      case 1:
        p.row(i).swap(p.row(j));
        break;
      default: {
        S c = random_scalar<S>(rng, field);
        if (field_traits<S>::is_zero(c)) c = field_traits<S>::from_int(1, field);
        p.row(i) *= c;
      }
    }
  }
  return p;
}

}  // namespace

TEST_CASE("diagonalization separates positive, negative, and radical directions") {
  const auto hyp = signature_of(qmat(2, {0, 1, 1, 0}));
  CHECK(hyp.p == 1);
  CHECK(hyp.q == 1);
  CHECK(hyp.radical == 0);

  const auto id3 = signature_of(Mat<Rational>::Identity(3, 3));
  CHECK(id3.p == 3);
  CHECK(id3.q == 0);

  const auto mixed = signature_of(qmat(3, {1, 0, 0, 0, -2, 0, 0, 0, 3}));
  CHECK(mixed.p == 2);
  CHECK(mixed.q == 1);

  const auto degen = signature_of(qmat(2, {1, 0, 0, 0}));
  CHECK(degen.p == 1);
  CHECK(degen.radical == 1);

  // the exchange form on pairs (i,j), (j,i) in four variables
  const auto swap4 = signature_of(qmat(4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}));
  CHECK(swap4.p == 3);
  CHECK(swap4.q == 1);
}

TEST_CASE("congruent matrices carry identical fingerprints") {
  DetRng rng(mix_seed(99, "congruence"));
  const FieldDescriptor fq{FieldKind::rationals, 0};
  const FieldDescriptor f7{FieldKind::prime_field, 7};

  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    Mat<Rational> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = random_scalar<Rational>(rng, fq);
    const auto base = fingerprint_of_symmetric(g, fq);
    CHECK(base.signature.has_value());
    if (base.signature)
      CHECK(base.signature->first + base.signature->second + base.radical_dim == n);
    for (int rep = 0; rep < 3; ++rep) {
      const Mat<Rational> p = random_invertible<Rational>(n, fq, rng);
      const Mat<Rational> moved = p.transpose() * g * p;
      CHECK(fingerprint_of_symmetric(moved, fq) == base);
    }
  }

  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    Mat<Fp> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = random_scalar<Fp>(rng, f7);
    const auto base = fingerprint_of_symmetric(g, f7);
    CHECK_FALSE(base.signature.has_value());
    for (int rep = 0; rep < 3; ++rep) {
      const Mat<Fp> p = random_invertible<Fp>(n, f7, rng);
      const Mat<Fp> moved = p.transpose() * g * p;
      CHECK(fingerprint_of_symmetric(moved, f7) == base);
    }
  }
}

TEST_CASE("fingerprints of standard forms over the rational envelope") {
  const auto a = builtin_algebra<Rational>("Q");
  const auto env = make_enveloping(a);

  const auto unit_form = fingerprint_of(env, psi_module(env, free_module(a, 1)).output);
  CHECK(unit_form.rank == 1);
  CHECK_FALSE(unit_form.rank_is_k_dimension);
  CHECK(unit_form.det_class == "1");
  REQUIRE(unit_form.signature.has_value());
  CHECK(*unit_form.signature == std::pair<long, long>{1, 0});
  CHECK_FALSE(unit_form.degenerate);

  // signatures of the forms attached to free modules of small rank
  const std::vector<std::pair<long, long>> expected = {{1, 0}, {3, 1}, {6, 3}, {10, 6}};
  for (int n = 1; n <= 4; ++n) {
    const auto f = fingerprint_of(env, psi_module(env, free_module(a, n)).output);
    CHECK(f.rank == n * n);
    REQUIRE(f.signature.has_value());
    CHECK(*f.signature == expected[n - 1]);
    const auto [p, q] = signature_of_representation_target(n);
    CHECK(f.signature->first == p);
    CHECK(f.signature->second == q);
  }

  const auto hyp = fingerprint_of(env, hyperbolic(free_module(env.B, 3), env.swap()));
  CHECK(hyp.rank == 6);
  REQUIRE(hyp.signature.has_value());
  CHECK(*hyp.signature == std::pair<long, long>{3, 3});
}

TEST_CASE("hyperbolic plane over F_7 has nonsquare determinant class") {
  // brute-force square table: {1, 2, 4} are the squares mod 7, so -1 = 6 is not
  std::set<std::int64_t> squares;
  for (std::int64_t x = 1; x < 7; ++x) squares.insert(x * x % 7);
  CHECK(squares == std::set<std::int64_t>{1, 2, 4});
  CHECK(squares.count(6) == 0);

  const auto a = builtin_algebra<Fp>("F7");
  const auto env = make_enveloping(a);
  const auto hyp = fingerprint_of(env, hyperbolic(free_module(env.B, 1), env.swap()));
  CHECK(hyp.rank == 2);
  CHECK_FALSE(hyp.degenerate);
  const FieldDescriptor f7{FieldKind::prime_field, 7};
  const Fp minus_one = field_traits<Fp>::from_int(-1, f7);
  CHECK(hyp.det_class == field_traits<Fp>::str(field_traits<Fp>::square_class_rep(minus_one, f7)));
  CHECK(hyp.det_class == "3 mod 7");
}

TEST_CASE("forms over two-dimensional commutative envelopes reduce through the fixed field") {
  // the conjugation-fixed field of the Gaussian algebra is the rationals;
  // the unit form transfers to twice the identity
  const auto qi = builtin_algebra<Rational>("Qi");
  const auto env_qi = make_enveloping(qi);
  const auto f_qi = fingerprint_of(env_qi, psi_module(env_qi, free_module(qi, 1)).output);
  CHECK(f_qi.rank == 1);
  CHECK_FALSE(f_qi.rank_is_k_dimension);
  CHECK(f_qi.det_class == "1");
  REQUIRE(f_qi.signature.has_value());
  CHECK(*f_qi.signature == std::pair<long, long>{2, 0});

  // the split quadratic algebra transfers the unit form to an exchange form
  const auto qq = builtin_algebra<Rational>("QxQ");
  const auto env_qq = make_enveloping(qq);
  const auto f_qq = fingerprint_of(env_qq, psi_module(env_qq, free_module(qq, 1)).output);
  CHECK(f_qq.rank == 1);
  CHECK(f_qq.det_class == "-1");
  REQUIRE(f_qq.signature.has_value());
  CHECK(*f_qq.signature == std::pair<long, long>{1, 1});
}

TEST_CASE("unsupported bases are rejected loudly") {
  const auto m2 = builtin_algebra<Rational>("M2Q");
  const auto env_m2 = make_enveloping(m2);
  CHECK_THROWS_WITH_AS(fingerprint_of(env_m2, psi_module(env_m2, free_module(m2, 1)).output),
                       doctest::Contains("not commutative"), input_error);

  const auto qc3 = builtin_algebra<Rational>("QC3");
  const auto env_qc3 = make_enveloping(qc3);
  CHECK_THROWS_WITH_AS(fingerprint_of(env_qc3, psi_module(env_qc3, free_module(qc3, 1)).output),
                       doctest::Contains("declares no involution"), input_error);

  // a form living over the group algebra itself, with the identity involution:
  // the fixed subspace is everything, so there is no reduction to the base field
  const auto tf = trace_form(qc3, identity_involution(*qc3), 1);
  CHECK_THROWS_WITH_AS(fingerprint_of(env_qc3, tf), doctest::Contains("does not fix"),
                       input_error);
}

TEST_CASE("extension fingerprints subtract summand invariants") {
  const auto a = builtin_algebra<Rational>("Q");
  const auto env = make_enveloping(a);

  // minus the unit class: rank one, net signature -1
  const auto minus_unit = fingerprint_of(env, dold_extend_psi(env, k0_free_difference(a, 0, 1)));
  CHECK(minus_unit.rank == 1);
  REQUIRE(minus_unit.signature.has_value());
  CHECK(minus_unit.signature->first - minus_unit.signature->second == -1);
  CHECK(minus_unit.det_class == "-1");

  // a class minus itself carries the fingerprint of zero
  const auto zero = fingerprint_of(env, dold_extend_psi(env, k0_free_difference(a, 2, 2)));
  CHECK(zero.rank == 0);
  REQUIRE(zero.signature.has_value());
  CHECK(*zero.signature == std::pair<long, long>{0, 0});
  CHECK(zero.det_class == "1");
  CHECK_FALSE(zero.degenerate);

  // rank two minus rank one: net signature +1
  const auto diff = fingerprint_of(env, dold_extend_psi(env, k0_free_difference(a, 2, 1)));
  REQUIRE(diff.signature.has_value());
  CHECK(diff.signature->first - diff.signature->second == 1);
}

TEST_CASE("extension fingerprints are stable under adding trivial summands") {
  for (const char* name : {"Q", "F7"}) {
    const bool rational = std::string(name) == "Q";
    const auto run = [&](auto tag) {
      using S = decltype(tag);
      const auto a = builtin_algebra<S>(name);
      const auto env = make_enveloping(a);
      for (int r = 0; r <= 2; ++r)
        for (int n = 0; n <= 2; ++n)
          for (int m = 1; m <= 2; ++m) {
            const auto lhs = fingerprint_of(
                env, dold_extend_psi(env, k0_free_difference(a, r + m, n + m)));
            const auto rhs =
                fingerprint_of(env, dold_extend_psi(env, k0_free_difference(a, r, n)));
            CHECK(lhs == rhs);
          }
    };
    if (rational) run(Rational());
    else run(Fp());
  }
}

TEST_CASE("endomorphism forms split into transpose eigenspaces") {
  const auto a = builtin_algebra<Rational>("Q");
  const auto env = make_enveloping(a);

  for (int n = 1; n <= 4; ++n) {
    const auto split = diagonal_restriction(a, n);
    CHECK(split.dims.first == n * (n + 1) / 2);
    CHECK(split.dims.second == n * (n - 1) / 2);
    CHECK(split.dims.first + split.dims.second == n * n);

    // over the rationals the fixed part is positive definite and the
    // anti-fixed part negative definite
    const auto fs = fingerprint_of(env, split.symmetric_part);
    REQUIRE(fs.signature.has_value());
    CHECK(*fs.signature == std::pair<long, long>{split.dims.first, 0});
    CHECK_FALSE(fs.degenerate);
    const auto fa = fingerprint_of(env, split.antisymmetric_part);
    REQUIRE(fa.signature.has_value());
    CHECK(*fa.signature == std::pair<long, long>{0, split.dims.second});
  }

  // rank two, written out: fixed part diag(1,1,2) on (E11, E22, E12+E21),
  // anti-fixed part diag(-2) on (E12-E21)
  const auto split2 = diagonal_restriction(a, 2);
  const auto& gs = split2.symmetric_part.gram;
  REQUIRE(gs.rows == 3);
  Mat<Rational> plain(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) plain(i, j) = gs.at(i, j)(0);
  CHECK(plain == qmat(3, {1, 0, 0, 0, 1, 0, 0, 0, 2}));
  REQUIRE(split2.antisymmetric_part.gram.rows == 1);
  CHECK(split2.antisymmetric_part.gram.at(0, 0)(0) == Rational(-2));

  // the two parts are orthogonal inside the full endomorphism form
  const Involution<Rational> id = identity_involution(*a);
  const auto tf = trace_form(a, id, 2);
  RingMat<Rational> vs(a, 4, 3), va(a, 4, 1);
  vs.at(0, 0) = a->unit;                        // E11
  vs.at(3, 1) = a->unit;                        // E22
  vs.at(1, 2) = a->unit;                        // E12 + E21
  vs.at(2, 2) = a->unit;
  va.at(1, 0) = a->unit;                        // E12 - E21
  va.at(2, 0) = Vec<Rational>(-a->unit);
  const auto cross = rm_mul(bar_transpose(id, vs), rm_mul(tf.gram, va));
  CHECK(cross == rm_zero(a, 3, 1));

  // dims over another commutative base follow the same count
  const auto qi = builtin_algebra<Rational>("Qi");
  const auto split_qi = diagonal_restriction(qi, 3);
  CHECK(split_qi.dims == std::pair<int, int>{6, 3});

  CHECK_THROWS_WITH_AS(diagonal_restriction(builtin_algebra<Rational>("M2Q"), 2),
                       doctest::Contains("commutative"), input_error);
  CHECK_THROWS_WITH_AS(diagonal_restriction(a, 0), doctest::Contains("positive"), input_error);
}

TEST_CASE("Witt classes over prime fields add with the discriminant twist") {
  DetRng rng(mix_seed(7, "witt-pairs"));
  for (std::int64_t p : {5LL, 7LL}) {
    const FieldDescriptor field{FieldKind::prime_field, p};
    const auto pair_of_diagonal = [&](const std::vector<Fp>& d) {
      Fp det = field_traits<Fp>::from_int(1, field);
      for (const auto& x : d) det = det * x;
      return witt_pair_fp(static_cast<long>(d.size()),
                          field_traits<Fp>::square_class_rep(det, field), field);
    };
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Fp> d1, d2;
      const auto fill = [&](std::vector<Fp>& d) {
        const int r = static_cast<int>(rng.below(5));
        for (int i = 0; i < r; ++i)
          d.push_back(field_traits<Fp>::from_int(1 + static_cast<std::int64_t>(rng.below(p - 1)),
                                                 field));
      };
      fill(d1);
      fill(d2);
      std::vector<Fp> sum = d1;
      sum.insert(sum.end(), d2.begin(), d2.end());
      CHECK(pair_of_diagonal(sum) ==
            witt_add_fp(pair_of_diagonal(d1), pair_of_diagonal(d2), field));
    }
    // the hyperbolic plane is the neutral class
    const Fp minus_one = field_traits<Fp>::from_int(-1, field);
    CHECK(witt_pair_fp(2, field_traits<Fp>::square_class_rep(minus_one, field), field) ==
          WittPairFp{0, 1});
  }
}

TEST_CASE("order of the image in the reduced Witt group") {
  const auto q = builtin_algebra<Rational>("Q");
  CHECK(image_order_mod(q, 3, 1) == 3);
  CHECK(image_order_mod(q, 5, 2) == 25);

  const auto f5 = builtin_algebra<Fp>("F5");
  CHECK(image_order_mod(f5, 3, 1) == 1);
  const auto f7 = builtin_algebra<Fp>("F7");
  CHECK(image_order_mod(f7, 3, 1) == 1);

  CHECK_THROWS_WITH_AS(image_order_mod(builtin_algebra<Rational>("QC3"), 3, 1),
                       doctest::Contains("one-dimensional"), input_error);
  CHECK_THROWS_WITH_AS(image_order_mod(q, 2, 1), doctest::Contains("odd prime"), input_error);
  CHECK_THROWS_WITH_AS(image_order_mod(q, 9, 1), doctest::Contains("odd prime"), input_error);
  CHECK_THROWS_WITH_AS(image_order_mod(q, 5, 0), doctest::Contains("positive"), input_error);
}
