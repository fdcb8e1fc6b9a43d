#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "psiherm/builtin.hpp"
#include "psiherm/psi.hpp"
#include "psiherm/rng.hpp"
#include "psiherm/witt.hpp"

namespace psiherm {

/// Outcome of one verification suite.  A suite that does not apply to the
/// given base algebra reports applicable = false with a note and counts as
/// passed; a failing suite carries the first witness found.
struct SuiteResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  long checks = 0;
  std::string note;
  nlohmann::ordered_json witness;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"sesquilinear", "trace-prop", "sum-decomp",
                                                 "gl-rep", "dold"};
  return names;
}

// ---------------------------------------------------------------------------
// sesquilinear: the form laws of psi(E) on random elements, plus nondegeneracy
// ---------------------------------------------------------------------------

/// Checks right linearity, left twisted-linearity, and hermitian symmetry of
/// the given form on random column/scalar triples.  Exposed separately so
/// tests can feed a deliberately corrupted Gram and watch it fail.
template <typename S>
void check_sesquilinear_identities(const Enveloping<S>& env, const HermitianModule<S>& h,
                                   const std::string& label, DetRng& rng, int triples,
                                   SuiteResult& out) {
  const auto& b = *env.B;
  const auto& swap = env.swap();
  const int amb = h.module.ambient();
  const auto random_column = [&]() {
    RingMat<S> u(h.module.idem.ring, amb, 1);
    for (int i = 0; i < amb; ++i) u.at(i, 0) = random_element(b, rng);
    return h.module.is_free ? u : rm_mul(h.module.idem, u);  // project into the module
  };
  const auto fail = [&](int t, const char* identity) {
    out.passed = false;
    out.witness = {{"module", label}, {"triple", t}, {"identity", identity}};
  };
  for (int t = 0; t < triples && out.passed; ++t) {
    const RingMat<S> u = random_column(), v = random_column();
    const Vec<S> c = random_element(b, rng);
    const Vec<S> base = evaluate_form(h, u, v);
    out.checks += 3;
    if (evaluate_form(h, u, rm_scale_right(v, c)) != Vec<S>(mul(b, base, c)))
      return fail(t, "right-linearity");
    if (evaluate_form(h, rm_scale_right(u, c), v) !=
        Vec<S>(mul(b, apply_involution(swap, c), base)))
      return fail(t, "left-twisted-linearity");
    if (evaluate_form(h, v, u) != apply_involution(swap, base)) return fail(t, "symmetry");
  }
}

template <typename S>
SuiteResult suite_sesquilinear(const Enveloping<S>& env, std::uint64_t seed) {
  SuiteResult out{"sesquilinear"};
  DetRng rng(mix_seed(seed, "sesquilinear"));
  for (int n = 1; n <= 3 && out.passed; ++n) {
    const auto p = psi_module(env, free_module(env.A, n));
    const std::string label = env.A->name + " free rank " + std::to_string(n);
    check_sesquilinear_identities(env, p.output, label, rng, 200, out);
    if (!out.passed) break;
    ++out.checks;
    if (!is_nondegenerate(p.output)) {
      out.passed = false;
      out.witness = {{"module", label}, {"identity", "nondegeneracy"}};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// trace-prop: base change along multiplication matches the endomorphism form
// ---------------------------------------------------------------------------

template <typename S>
SuiteResult suite_trace_prop(const Enveloping<S>& env, std::uint64_t) {
  SuiteResult out{"trace-prop"};
  if (!env.A->commutative) {
    out.applicable = false;
    out.note = "the endomorphism comparison needs a commutative base algebra";
    return out;
  }
  for (const auto& sigma : env.A->involutions) {
    const auto mu = mult_morphism(env, sigma);
    for (int n = 1; n <= 3 && out.passed; ++n) {
      const auto lhs =
          base_change_hermitian(mu, sigma, psi_module(env, free_module(env.A, n)).output);
      const auto rhs = trace_form(env.A, sigma, n);
      // the identification sends the pair (i, j) to the endomorphism E_{ji}
      const auto reindex = [n](int u) { return (u % n) * n + u / n; };
      ++out.checks;
      for (int u = 0; u < n * n && out.passed; ++u)
        for (int v = 0; v < n * n; ++v)
          if (lhs.gram.at(u, v) != rhs.gram.at(reindex(u), reindex(v))) {
            out.passed = false;
            out.witness = {{"involution", sigma.name},
                           {"rank", n},
                           {"entry", {u, v}},
                           {"identity", "endomorphism form"}};
            break;
          }
      if (out.passed && n == 1) {
        ++out.checks;
        if (lhs.gram.at(0, 0) != env.A->unit) {
          out.passed = false;
          out.witness = {{"involution", sigma.name},
                         {"rank", 1},
                         {"identity", "unit form (x, y) -> bar(x) y"}};
        }
      }
    }
    if (!out.passed) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// sum-decomp: psi of a direct sum splits off the hyperbolic cross term
// ---------------------------------------------------------------------------

template <typename S>
SuiteResult suite_sum_decomp(const Enveloping<S>& env, std::uint64_t) {
  SuiteResult out{"sum-decomp"};
  for (int a = 0; a <= 4 && out.passed; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      const auto d =
          sum_decomposition_isometry(env, free_module(env.A, a), free_module(env.A, b));
      const auto ck = verify_isometry(d.whole, d.decomposed, d.map);
      ++out.checks;
      if (!ck.ok) {
        out.passed = false;
        out.witness = {{"ranks", {a, b}}, {"reason", ck.witness}};
        break;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// gl-rep: multiplicativity and form preservation of the representation
// ---------------------------------------------------------------------------

template <typename S>
SuiteResult suite_gl_rep(const Enveloping<S>& env, std::uint64_t seed) {
  SuiteResult out{"gl-rep"};
  DetRng rng(mix_seed(seed, "gl-rep"));
  for (int n = 1; n <= 3 && out.passed; ++n) {
    const auto p = psi_module(env, free_module(env.A, n));
    const auto& swap = env.swap();
    const auto preserves = [&](const RingMat<S>& img) {
      return rm_mul(bar_transpose(swap, img), rm_mul(p.output.gram, img)) == p.output.gram;
    };
    for (int pair = 0; pair < 34 && out.passed; ++pair) {
      const auto [g, gi] = random_gl(env.A, n, rng);
      const auto [h, hi] = random_gl(env.A, n, rng);
      const RingMat<S> pg = psi_on_iso(env, g, gi).image;
      const RingMat<S> ph = psi_on_iso(env, h, hi).image;
      const RingMat<S> pgh = psi_on_iso(env, rm_mul(g, h), rm_mul(hi, gi)).image;
      out.checks += 3;
      const auto fail = [&](const char* law) {
        out.passed = false;
        out.witness = {{"rank", n}, {"pair", pair}, {"law", law}};
      };
      if (pgh != rm_mul(pg, ph)) {
        fail("multiplicativity");
      } else if (!preserves(pg)) {
        fail("form preservation (left factor)");
      } else if (!preserves(ph)) {
        fail("form preservation (right factor)");
      }
    }
  }
  if constexpr (std::is_same_v<S, Rational>) {
    if (out.passed && env.A->dim == 1) {
      for (int n = 1; n <= 4 && out.passed; ++n) {
        const auto f = fingerprint_of(env, psi_module(env, free_module(env.A, n)).output);
        const auto [p, q] = signature_of_representation_target(n);
        ++out.checks;
        if (!f.signature || f.signature->first != p || f.signature->second != q) {
          out.passed = false;
          out.witness = {{"rank", n},
                         {"law", "target signature"},
                         {"expected", {p, q}},
                         {"got", f.signature ? nlohmann::ordered_json{f.signature->first,
                                                                      f.signature->second}
                                             : nlohmann::ordered_json(nullptr)}};
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// dold: fingerprints of extended classes are stable under trivial enlargement
// ---------------------------------------------------------------------------

template <typename S>
SuiteResult suite_dold(const Enveloping<S>& env, std::uint64_t) {
  SuiteResult out{"dold"};
  if (!env.A->commutative || fingerprint_involution(*env.A) == nullptr) {
    out.applicable = false;
    out.note = "no reduction of forms over the enveloping algebra to the base field "
               "is available for this algebra";
    return out;
  }
  for (int r = 0; r <= 2 && out.passed; ++r)
    for (int n = 0; n <= 2 && out.passed; ++n)
      for (int m = 1; m <= 2; ++m) {
        const auto lhs =
            fingerprint_of(env, dold_extend_psi(env, k0_free_difference(env.A, r + m, n + m)));
        const auto rhs =
            fingerprint_of(env, dold_extend_psi(env, k0_free_difference(env.A, r, n)));
        ++out.checks;
        if (!(lhs == rhs)) {
          out.passed = false;
          out.witness = {{"rank", r},
                         {"minus", n},
                         {"shift", m},
                         {"lhs", to_string(lhs)},
                         {"rhs", to_string(rhs)}};
          break;
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

template <typename S>
std::vector<SuiteResult> run_suites(const Enveloping<S>& env, const std::string& selector,
                                    std::uint64_t seed) {
  const auto one = [&](const std::string& name) -> SuiteResult {
    if (name == "sesquilinear") return suite_sesquilinear(env, seed);
    if (name == "trace-prop") return suite_trace_prop(env, seed);
    if (name == "sum-decomp") return suite_sum_decomp(env, seed);
    if (name == "gl-rep") return suite_gl_rep(env, seed);
    if (name == "dold") return suite_dold(env, seed);
    throw input_error("unknown suite '" + name +
                      "' (expected sesquilinear, trace-prop, sum-decomp, gl-rep, dold, all)");
  };
  std::vector<SuiteResult> out;
  if (selector == "all") {
    for (const auto& name : suite_names()) out.push_back(one(name));
  } else {
    out.push_back(one(selector));
  }
  return out;
}

}  // namespace psiherm
