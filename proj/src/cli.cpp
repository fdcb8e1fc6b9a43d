#include "psiherm/cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psiherm/algebra_io.hpp"
#include "psiherm/builtin.hpp"
#include "psiherm/report.hpp"
#include "psiherm/suites.hpp"
#include "psiherm/witt.hpp"

namespace psiherm {
namespace {

using nlohmann::ordered_json;

struct Request {
  std::string command;
  std::string algebra_spec = "builtin:Q";
  std::string module_spec;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string out_path;
};

struct AlgebraSource {
  std::string spec;
  bool builtin = false;
  std::string text;  // file contents, or the builtin name
  FieldDescriptor field;
};

AlgebraSource resolve_algebra(const std::string& spec) {
  AlgebraSource src;
  src.spec = spec;
  if (spec.rfind("builtin:", 0) == 0) {
    src.builtin = true;
    src.text = spec.substr(8);
    src.field = builtin_field_descriptor(src.text);
    return src;
  }
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw input_error("cannot open algebra file '" + spec + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  src.text = buf.str();
  src.field = peek_field(src.text, spec);
  return src;
}

template <typename S>
AlgebraPtr<S> load_from_source(const AlgebraSource& src) {
  if (src.builtin) return builtin_algebra<S>(src.text);
  return load_algebra<S>(src.text, src.spec);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

long parse_long(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw input_error("");
    return v;
  } catch (const std::exception&) {
    throw input_error("cannot parse " + what + " from '" + text + "'");
  }
}

int parse_free_rank(const std::string& tok) {
  if (tok.rfind("free:", 0) != 0)
    throw input_error("module spec '" + tok + "': expected free:<n> or idem:<file>");
  const long n = parse_long(tok.substr(5), "rank");
  if (n < 0 || n > 8) throw input_error("module spec '" + tok + "': rank must be in [0, 8]");
  return static_cast<int>(n);
}

template <typename S>
ordered_json algebra_echo(const Algebra<S>& a) {
  ordered_json names = ordered_json::array();
  for (const auto& t : a.involutions) names.push_back(t.name);
  ordered_json basis = ordered_json::array();
  for (const auto& b : a.basis) basis.push_back(b);
  return {{"name", a.name},         {"field", to_string(a.field)},
          {"dim", a.dim},           {"basis", std::move(basis)},
          {"commutative", a.commutative}, {"involutions", std::move(names)}};
}

// ---------------------------------------------------------------------------
// psi: construct the hermitian module attached to E
// ---------------------------------------------------------------------------

template <typename S>
int cmd_psi(const AlgebraSource& src, const Request& req, ordered_json& report) {
  const auto a = load_from_source<S>(src);
  const auto env = make_enveloping(a);

  Module<S> m = free_module(a, 0);
  std::string kind;
  if (req.module_spec.rfind("idem:", 0) == 0) {
    const std::string path = req.module_spec.substr(5);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open idempotent file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    m = projective_module(a, load_ring_matrix<S>(buf.str(), path, a));
    kind = m.is_free ? "free" : "projective";
  } else {
    m = free_module(a, parse_free_rank(req.module_spec));
    kind = "free";
  }

  const PsiResult<S> p = psi_module(env, m);
  report["construction"] = {{"algebra", algebra_echo(*a)},
                            {"module",
                             {{"kind", kind},
                              {"ambient", m.ambient()},
                              {"k_dimension", k_dimension(m)}}},
                            {"operation", "psi"}};

  ordered_json results;
  ordered_json labels = ordered_json::array();
  for (const auto& l : p.basis_map) labels.push_back(l);
  results["basis"] = std::move(labels);
  results["gram"] = ring_mat_json(p.output.gram);
  results["hermitian"] = "pass";  // construction revalidates symmetry and support
  const bool nondeg = is_nondegenerate(p.output);
  results["nondegenerate"] = nondeg ? "pass" : "fail";
  try {
    results["fingerprint"] = fingerprint_json(fingerprint_of(env, p.output));
  } catch (const input_error& e) {
    results["fingerprint"] = {{"note", e.what()}};
  }
  report["results"] = std::move(results);
  report["timing"] = {{"mode", "deterministic"},
                      {"counters",
                       {{"gram_entries",
                         static_cast<long>(p.output.gram.rows) * p.output.gram.cols}}}};
  return nondeg ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify: run the selected property suites
// ---------------------------------------------------------------------------

template <typename S>
int cmd_verify(const AlgebraSource& src, const Request& req, ordered_json& report) {
  const auto a = load_from_source<S>(src);
  const auto env = make_enveloping(a);
  const std::vector<SuiteResult> suites = run_suites(env, req.suite, req.seed);

  report["construction"] = {{"algebra", algebra_echo(*a)},
                            {"operation", "verify"},
                            {"suite", req.suite}};
  ordered_json results = ordered_json::array();
  long total_checks = 0;
  bool all_pass = true;
  for (const auto& s : suites) {
    results.push_back(suite_json(s));
    total_checks += s.checks;
    all_pass = all_pass && (!s.applicable || s.passed);
  }
  report["results"] = std::move(results);
  report["timing"] = {{"mode", "deterministic"},
                      {"counters",
                       {{"suites", static_cast<long>(suites.size())},
                        {"checks", total_checks}}}};
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// invariants: fingerprints of extended classes, split dims, image orders
// ---------------------------------------------------------------------------

template <typename S>
int cmd_invariants(const AlgebraSource& src, const Request& req, ordered_json& report) {
  const auto a = load_from_source<S>(src);
  const std::string spec = trim(req.module_spec);

  report["construction"] = {{"algebra", algebra_echo(*a)}, {"operation", "invariants"}};
  ordered_json results;

  if (spec.rfind("image-order", 0) == 0) {
    std::string rest = trim(spec.substr(11));
    long p = -1, alpha = -1;
    std::istringstream toks(rest);
    std::string tok;
    while (toks >> tok) {
      if (tok.rfind("p=", 0) == 0) p = parse_long(tok.substr(2), "p");
      else if (tok.rfind("alpha=", 0) == 0) alpha = parse_long(tok.substr(6), "alpha");
      else throw input_error("image-order: unexpected token '" + tok + "'");
    }
    if (p < 0 || alpha < 0)
      throw input_error("image-order requires p=<odd prime> and alpha=<positive integer>");
    const long order = image_order_mod(a, p, alpha);
    report["construction"]["class"] = spec;
    results["image_order"] = {{"p", p}, {"alpha", alpha}, {"order", order}};
    report["results"] = std::move(results);
    report["timing"] = {{"mode", "deterministic"},
                        {"counters", {{"classes_enumerated", pow_long(p, alpha)}}}};
    return 0;
  }

  int plus_rank = 0, minus_rank = 0;
  if (const auto dash = spec.find('-'); dash != std::string::npos) {
    plus_rank = parse_free_rank(trim(spec.substr(0, dash)));
    minus_rank = parse_free_rank(trim(spec.substr(dash + 1)));
  } else {
    plus_rank = parse_free_rank(spec);
  }
  report["construction"]["class"] =
      "free:" + std::to_string(plus_rank) + " - free:" + std::to_string(minus_rank);

  const auto env = make_enveloping(a);
  const auto gw = dold_extend_psi(env, k0_free_difference(a, plus_rank, minus_rank));
  const WittFingerprint f = fingerprint_of(env, gw);  // unsupported base -> input error

  results["virtual_rank"] = plus_rank - minus_rank;
  results["fingerprint"] = fingerprint_json(f);
  results["net_signature"] =
      f.signature ? ordered_json(f.signature->first - f.signature->second)
                  : ordered_json(nullptr);

  const auto split_dims = [&](int rank) -> ordered_json {
    if (rank < 1) return nullptr;
    const auto split = diagonal_restriction(a, rank);
    return {{"rank", rank}, {"dims", {split.dims.first, split.dims.second}}};
  };
  results["eigenspace_split"] = {{"plus", split_dims(plus_rank)},
                                 {"minus", split_dims(minus_rank)}};

  long summands = static_cast<long>(gw.plus.size() + gw.minus.size());
  report["results"] = std::move(results);
  report["timing"] = {{"mode", "deterministic"}, {"counters", {{"summands", summands}}}};
  return 0;
}

// ---------------------------------------------------------------------------

template <typename S>
int dispatch(const AlgebraSource& src, const Request& req, ordered_json& report) {
  if (req.command == "psi") return cmd_psi<S>(src, req, report);
  if (req.command == "verify") return cmd_verify<S>(src, req, report);
  return cmd_invariants<S>(src, req, report);
}

}  // namespace

CliOutcome run_cli(const std::vector<std::string>& args) {
  CliOutcome outcome;
  Request req;

  CLI::App app{"exact hermitian forms attached to projective modules"};
  app.name("psiherm");
  app.require_subcommand(1);

  CLI::App* psi = app.add_subcommand("psi", "construct the hermitian module of E");
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  CLI::App* invariants = app.add_subcommand("invariants", "fingerprints and image orders");

  for (CLI::App* sub : {psi, verify, invariants}) {
    sub->add_option("--algebra", req.algebra_spec,
                    "builtin:<name> or a path to an algebra-spec JSON file")
        ->capture_default_str();
    sub->add_option("--seed", req.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--out", req.out_path, "also write the JSON report to this path");
  }
  psi->add_option("--module", req.module_spec, "free:<n> or idem:<file> (default free:2)");
  invariants->add_option(
      "--module", req.module_spec,
      "free:<a> - free:<b>, free:<a>, or image-order p=<p> alpha=<a> (default free:2 - free:1)");
  verify->add_option("--suite", req.suite,
                     "sesquilinear, trace-prop, sum-decomp, gl-rep, dold, or all")
      ->capture_default_str();

  std::vector<std::string> argv_store = {"psiherm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size());
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    outcome.out = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.exit_code = 2;
    return outcome;
  }
  for (CLI::App* sub : {psi, verify, invariants})
    if (sub->parsed()) req.command = sub->get_name();
  if (req.module_spec.empty())
    req.module_spec = req.command == "invariants" ? "free:2 - free:1" : "free:2";

  try {
    const AlgebraSource src = resolve_algebra(req.algebra_spec);
    const std::string detail = req.command == "verify" ? req.suite : req.module_spec;
    ordered_json report =
        report_skeleton(req.command, req.algebra_spec, src.text, detail, req.seed);
    const int code = src.field.kind == FieldKind::rationals
                         ? dispatch<Rational>(src, req, report)
                         : dispatch<Fp>(src, req, report);
    outcome.exit_code = code;
    outcome.out = report.dump(2) + "\n";
    if (!req.out_path.empty()) {
      std::ofstream out(req.out_path, std::ios::binary);
      if (!out) throw input_error("cannot write report to '" + req.out_path + "'");
      out << outcome.out;
    }
    if (code == 1) outcome.err = "verification failed; see report\n";
  } catch (const input_error& e) {
    outcome.err = std::string("error: ") + e.what() + "\n";
    outcome.exit_code = 2;
  } catch (const std::exception& e) {
    outcome.err = std::string("internal error: ") + e.what() + "\n";
    outcome.exit_code = 2;
  }
  return outcome;
}

}  // namespace psiherm
