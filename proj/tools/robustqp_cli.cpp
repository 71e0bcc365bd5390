// Command line front end. One subcommand per capability: feasibility,
// certificate search + verification (two-sided and one-sided), certificate
// re-verification from a file, the alternative decision, Slater check,
// sampling oracle, convexity diagnostics, and the built-in reference example.
//
// Exit codes: 0 established, 1 not established (failed verification,
// NOT_FOUND, INCONCLUSIVE, infeasible), 2 input or usage error.
//
// Default output is a human table on stdout. With --json the machine document
// goes to stdout and the table moves to stderr, so stdout stays parseable.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "robustqp/certificates.hpp"
#include "robustqp/convexity.hpp"
#include "robustqp/homogenize.hpp"
#include "robustqp/io.hpp"
#include "robustqp/oracle.hpp"
#include "robustqp/search.hpp"
#include "robustqp/worked_example.hpp"

namespace {

using nlohmann::ordered_json;
using namespace robustqp;

constexpr int kEstablished = 0;
constexpr int kNotEstablished = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string instance_path;
  std::string xbar_path;
  std::string x_spec = "zeros";
  std::string cert_path;
  std::optional<double> gamma;
  double tol = 1e-8;
  double box = 10.0;
  double margin = 1e-6;
  std::uint64_t seed = 0;
  int mu_grid = 101;
  int delta_grid = 101;
  int samples = 100000;
  int grid = 0;
  int falsifier_grid = 11;
  int n = 5;
  bool json = false;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RobustInstance load_instance(const Options& opt) {
  return parse_instance(read_text_file(opt.instance_path));
}

Vector load_point(const std::string& spec, int dim) {
  if (spec == "zeros") return Vector(static_cast<std::size_t>(dim), 0.0);
  return parse_vector(read_text_file(spec), dim);
}

// Accepts either a bare certificate document or the full output of
// `certify --json` / `alternative --json`, which wraps the certificate in a
// command envelope. Redirecting such output to a file and feeding it back
// through verify-cert has to just work.
CertificateDocument load_certificate(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_object() && doc.contains("certificate") && doc["certificate"].is_object())
    return parse_certificate(doc["certificate"].dump());
  return parse_certificate(text);
}

SearchBudget budget_from(const Options& opt) {
  SearchBudget budget;
  budget.mu_grid = opt.mu_grid;
  budget.delta_grid = opt.delta_grid;
  budget.sample_count = opt.samples;
  budget.seed = opt.seed;
  budget.tol = opt.tol;
  budget.box_halfwidth = opt.box;
  return budget;
}

ordered_json json_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json certificate_json(const CertificateDocument& doc) {
  return ordered_json::parse(emit_certificate(doc));
}

// key: value lines, nested objects indented. Scalars and flat arrays reuse
// the JSON token spelling so both output modes show identical numerals.
void print_table(const ordered_json& doc, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::size_t width = 0;
  for (const auto& item : doc.items()) width = std::max(width, item.key().size());
  for (const auto& item : doc.items()) {
    const auto& v = item.value();
    if (v.is_object()) {
      os << pad << item.key() << ":\n";
      print_table(v, os, indent + 2);
    } else {
      os << pad << item.key() << std::string(width - item.key().size(), ' ') << " = "
         << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int emit_report(const ordered_json& doc, bool as_json, int code) {
  if (as_json) {
    std::cout << doc.dump(2) << "\n";
    print_table(doc, std::cerr, 0);
  } else {
    print_table(doc, std::cout, 0);
  }
  return code;
}

int run_check_feasible(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  const Vector x = load_point(opt.x_spec, inst.n());
  const FeasibilityReport rep = is_robust_feasible(inst, x, opt.tol);
  ordered_json out;
  out["command"] = "check-feasible";
  out["feasible"] = rep.feasible;
  out["upper_margin"] = json_real(rep.upper_margin);
  out["lower_margin"] = json_real(rep.lower_margin);
  out["tolerance"] = opt.tol;
  return emit_report(out, opt.json, rep.feasible ? kEstablished : kNotEstablished);
}

int run_certify(const Options& opt, bool force_one_sided) {
  const RobustInstance inst = load_instance(opt);
  const Vector xbar = load_point(opt.xbar_path, inst.n());
  const SearchBudget budget = budget_from(opt);

  ordered_json out;
  out["command"] = force_one_sided ? "certify-one-sided" : "certify";
  out["mu_grid"] = opt.mu_grid;
  out["delta_grid"] = opt.delta_grid;
  out["tolerance"] = opt.tol;

  // An infeasible candidate is a negative answer, not a malformed request;
  // report it instead of letting the search throw.
  if (!is_robust_feasible(inst, xbar, opt.tol).feasible) {
    out["result"] = "INFEASIBLE_POINT";
    return emit_report(out, opt.json, kNotEstablished);
  }

  CertificateDocument doc;
  VerificationReport report;
  if (inst.constraint.one_sided() || force_one_sided) {
    const auto found = search_one_sided_certificate(inst, xbar, budget);
    if (!found.has_value()) {
      out["result"] = "NOT_FOUND";
      return emit_report(out, opt.json, kNotEstablished);
    }
    report = verify_one_sided_certificate(inst, xbar, *found, opt.tol);
    doc.kind = "one_sided";
    doc.one_sided = *found;
  } else {
    const auto found = search_optimality_certificate(inst, xbar, budget);
    if (!found.has_value()) {
      out["result"] = "NOT_FOUND";
      return emit_report(out, opt.json, kNotEstablished);
    }
    report = verify_optimality_certificate(inst, xbar, *found, opt.tol);
    doc.kind = "optimality";
    doc.optimality = *found;
  }
  doc.report = report;
  out["result"] = report.passed ? "VERIFIED" : "FAILED_VERIFICATION";
  out["certificate"] = certificate_json(doc);
  return emit_report(out, opt.json, report.passed ? kEstablished : kNotEstablished);
}

int run_verify_cert(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  CertificateDocument doc = load_certificate(opt.cert_path);

  VerificationReport report;
  if (doc.kind == "alternative") {
    if (!opt.gamma.has_value())
      throw std::invalid_argument("verify-cert: alternative certificates need --gamma");
    report = verify_alternative_certificate(inst, *opt.gamma, *doc.alternative, opt.tol);
  } else {
    if (opt.xbar_path.empty())
      throw std::invalid_argument("verify-cert: optimality certificates need --xbar");
    const Vector xbar = load_point(opt.xbar_path, inst.n());
    if (doc.kind == "optimality")
      report = verify_optimality_certificate(inst, xbar, *doc.optimality, opt.tol);
    else
      report = verify_one_sided_certificate(inst, xbar, *doc.one_sided, opt.tol);
  }
  doc.report = report;

  ordered_json out;
  out["command"] = "verify-cert";
  out["result"] = report.passed ? "VERIFIED" : "FAILED_VERIFICATION";
  out["certificate"] = certificate_json(doc);
  return emit_report(out, opt.json, report.passed ? kEstablished : kNotEstablished);
}

int run_alternative(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  if (!opt.gamma.has_value()) throw std::invalid_argument("alternative: --gamma is required");
  const AlternativeDecision decision = decide_alternative(inst, *opt.gamma, budget_from(opt));

  ordered_json out;
  out["command"] = "alternative";
  out["seed"] = opt.seed;
  out["gamma"] = *opt.gamma;
  out["tolerance"] = opt.tol;

  if (decision.outcome == AlternativeOutcome::inconclusive) {
    out["outcome"] = "INCONCLUSIVE";
    return emit_report(out, opt.json, kNotEstablished);
  }

  CertificateDocument doc;
  doc.kind = "alternative";
  if (decision.outcome == AlternativeOutcome::branch_a) {
    out["outcome"] = "WITNESS_FOUND";
    doc.alternative = AlternativeCertificate{*decision.witness};
  } else {
    out["outcome"] = "MULTIPLIERS_FOUND";
    doc.alternative = AlternativeCertificate{*decision.multipliers};
  }
  const VerificationReport report =
      verify_alternative_certificate(inst, *opt.gamma, *doc.alternative, opt.tol);
  doc.report = report;
  out["certificate"] = certificate_json(doc);
  return emit_report(out, opt.json, report.passed ? kEstablished : kNotEstablished);
}

int run_slater(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  const Vector x = load_point(opt.x_spec, inst.n());
  const bool ok = check_slater(inst, x, opt.margin);
  ordered_json out;
  out["command"] = "slater";
  out["margin"] = opt.margin;
  out["satisfied"] = ok;
  return emit_report(out, opt.json, ok ? kEstablished : kNotEstablished);
}

int run_brute_force(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  const OracleResult r = brute_force_min(inst, opt.box, opt.grid, opt.samples, opt.seed);
  ordered_json out;
  out["command"] = "brute-force";
  out["seed"] = opt.seed;
  out["box"] = opt.box;
  out["grid_per_dim"] = opt.grid;
  out["random_extra"] = opt.samples;
  out["feasible_found"] = r.feasible_found;
  out["samples_evaluated"] = r.samples_evaluated;
  if (r.best_value.has_value()) out["best_value"] = *r.best_value;
  if (r.best_x.has_value()) out["best_x"] = *r.best_x;
  return emit_report(out, opt.json, r.feasible_found ? kEstablished : kNotEstablished);
}

int run_check_convexity(const Options& opt) {
  const RobustInstance inst = load_instance(opt);
  const double gamma = opt.gamma.value_or(0.0);
  const HomogenizedSet hs = homogenize(inst, gamma);
  const auto gens = omega_mu_generators(hs, !inst.constraint.one_sided());

  std::vector<SymmetricMatrix> blocks;
  blocks.reserve(gens.size());
  for (const auto& g : gens) blocks.push_back(principal_block(g, inst.n()));

  const auto combination = find_pd_combination(gens);
  const ScaledFamilyReport family = check_scaled_family(blocks);

  // The falsifier scans a preimage grid over the lifted space; past dimension
  // 4 that grid is hopeless, so it is skipped rather than run token-style.
  constexpr int kFalsifierDimLimit = 4;
  std::optional<ImageConvexityResult> falsifier;
  if (inst.n() + 1 <= kFalsifierDimLimit)
    falsifier = falsify_image_convexity(gens, kFalsifierDimLimit, opt.falsifier_grid, 20, opt.seed);

  ordered_json out;
  out["command"] = "check-convexity";
  out["seed"] = opt.seed;
  out["gamma"] = gamma;
  out["generators"] = gens.size();
  out["pd_combination_found"] = combination.has_value();
  if (combination.has_value()) out["pd_coefficients"] = *combination;
  out["scaled_family_passes"] = family.passes;
  if (family.passes) {
    out["scaled_family_rho"] = family.rho;
  } else {
    out["scaled_family_reason"] = family.reason;
  }
  const bool witness_found = falsifier.has_value() && falsifier->witness.has_value();
  if (falsifier.has_value()) {
    out["falsifier_pairs_tested"] = falsifier->pairs_tested;
    out["witness_found"] = witness_found;
    if (witness_found) {
      ordered_json w;
      w["midpoint"] = falsifier->witness->midpoint;
      w["best_mismatch"] = falsifier->witness->best_mismatch;
      out["witness"] = w;
    }
  } else {
    out["falsifier"] = "skipped: lifted dimension exceeds the preimage grid limit";
  }

  int code = kNotEstablished;
  std::string verdict = "INCONCLUSIVE";
  if (witness_found) {
    verdict = "NONCONVEXITY_WITNESS";
  } else if (combination.has_value() || family.passes) {
    verdict = "CONVEXITY_CERTIFIED";
    code = kEstablished;
  }
  out["verdict"] = verdict;
  return emit_report(out, opt.json, code);
}

int run_reproduce_example(const Options& opt) {
  const WorkedExample ex = build_worked_example(opt.n);
  const GapWitnessValues witness = gap_witness_values(opt.n);
  const HypothesesReport hypotheses = convexity_hypotheses_report(opt.n);

  SearchBudget budget = budget_from(opt);
  const auto found = search_one_sided_certificate(ex.instance, ex.xbar, budget);

  ordered_json out;
  out["command"] = "reproduce-example";
  out["n"] = opt.n;
  out["gamma"] = ex.gamma;
  out["xbar"] = ex.xbar;

  ordered_json expected;
  expected["lambda"] = ex.expected_cert.lambda;
  expected["mu"] = ex.expected_cert.mu;
  expected["delta"] = ex.expected_cert.delta;
  out["expected_certificate"] = expected;

  bool ok = hypotheses.passes;
  if (found.has_value()) {
    const VerificationReport report =
        verify_one_sided_certificate(ex.instance, ex.xbar, *found, opt.tol);
    CertificateDocument doc;
    doc.kind = "one_sided";
    doc.one_sided = *found;
    doc.report = report;
    out["certificate"] = certificate_json(doc);
    const bool matches = std::abs(found->lambda - ex.expected_cert.lambda) <= 1e-6 &&
                         std::abs(found->mu - ex.expected_cert.mu) <= 1e-6 &&
                         std::abs(found->delta - ex.expected_cert.delta) <= 1e-6;
    out["matches_closed_form"] = matches;
    ok = ok && report.passed && matches;
  } else {
    out["certificate"] = "NOT_FOUND";
    ok = false;
  }

  ordered_json gap;
  gap["h0_value"] = witness.h0_value;
  gap["pencil_value"] = witness.pencil_value;
  out["gap_witness"] = gap;

  ordered_json hyp;
  hyp["combination_positive_definite"] = hypotheses.combination.positive_definite;
  hyp["combination_min_eigenvalue"] = hypotheses.combination.min_eigenvalue;
  hyp["combination_max_eigenvalue"] = hypotheses.combination_max_eigenvalue;
  hyp["scaled_family_passes"] = hypotheses.scaled_family.passes;
  hyp["scaled_family_rho"] = hypotheses.scaled_family.rho;
  hyp["passes"] = hypotheses.passes;
  out["hypotheses"] = hyp;

  return emit_report(out, opt.json, ok ? kEstablished : kNotEstablished);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust band-constrained QP certificates"};
  app.require_subcommand(1);
  Options opt;

  const auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", opt.instance_path, "instance JSON file")->required();
  };
  const auto add_json = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opt.json, "machine-readable document on stdout");
  };
  const auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opt.tol, "verification tolerance");
  };
  const auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--mu-grid", opt.mu_grid, "mu grid points");
    cmd->add_option("--delta-grid", opt.delta_grid, "delta grid points");
    cmd->add_option("--samples", opt.samples, "random sample budget");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--box", opt.box, "sampling box half-width");
  };

  auto* check_feasible = app.add_subcommand("check-feasible", "robust feasibility of a point");
  add_instance(check_feasible);
  check_feasible->add_option("--x", opt.x_spec, "point JSON file or 'zeros'");
  add_tol(check_feasible);
  add_json(check_feasible);

  auto* certify = app.add_subcommand("certify", "search and verify an optimality certificate");
  add_instance(certify);
  certify->add_option("--xbar", opt.xbar_path, "candidate point JSON file")->required();
  add_tol(certify);
  add_budget(certify);
  add_json(certify);

  auto* certify_one = app.add_subcommand("certify-one-sided",
                                         "one-sided (alpha = -inf) certificate search");
  add_instance(certify_one);
  certify_one->add_option("--xbar", opt.xbar_path, "candidate point JSON file")->required();
  add_tol(certify_one);
  add_budget(certify_one);
  add_json(certify_one);

  auto* verify_cert = app.add_subcommand("verify-cert", "re-verify a stored certificate");
  add_instance(verify_cert);
  verify_cert->add_option("--cert", opt.cert_path, "certificate JSON file")->required();
  verify_cert->add_option("--xbar", opt.xbar_path, "candidate point JSON file");
  verify_cert->add_option("--gamma", opt.gamma, "objective level for alternative certificates");
  add_tol(verify_cert);
  add_json(verify_cert);

  auto* alternative = app.add_subcommand("alternative",
                                         "decide the strict-witness/multiplier alternative");
  add_instance(alternative);
  alternative->add_option("--gamma", opt.gamma, "objective level")->required();
  add_tol(alternative);
  add_budget(alternative);
  add_json(alternative);

  auto* slater = app.add_subcommand("slater", "strict band interior check");
  add_instance(slater);
  slater->add_option("--x", opt.x_spec, "point JSON file or 'zeros'");
  slater->add_option("--margin", opt.margin, "required strict margin");
  add_json(slater);

  auto* brute = app.add_subcommand("brute-force", "sampling oracle for the global minimum");
  add_instance(brute);
  brute->add_option("--box", opt.box, "search box half-width");
  brute->add_option("--grid", opt.grid, "grid points per dimension (0 = random only)");
  brute->add_option("--samples", opt.samples, "random samples");
  brute->add_option("--seed", opt.seed, "random seed");
  add_json(brute);

  auto* convexity = app.add_subcommand("check-convexity",
                                       "structural convexity conditions and falsifier");
  add_instance(convexity);
  convexity->add_option("--gamma", opt.gamma, "objective level for the lift (default 0)");
  convexity->add_option("--grid", opt.falsifier_grid, "falsifier grid resolution");
  convexity->add_option("--seed", opt.seed, "random seed");
  add_json(convexity);

  auto* reproduce = app.add_subcommand("reproduce-example", "built-in reference example");
  reproduce->add_option("--n", opt.n, "dimension (>= 5)");
  add_tol(reproduce);
  add_budget(reproduce);
  add_json(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;  // --help
    std::cerr << app.help() << std::flush;
    return kUsageError;
  }

  try {
    if (*check_feasible) return run_check_feasible(opt);
    if (*certify) return run_certify(opt, false);
    if (*certify_one) return run_certify(opt, true);
    if (*verify_cert) return run_verify_cert(opt);
    if (*alternative) return run_alternative(opt);
    if (*slater) return run_slater(opt);
    if (*brute) return run_brute_force(opt);
    if (*convexity) return run_check_convexity(opt);
    if (*reproduce) return run_reproduce_example(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  std::cerr << app.help() << std::flush;
  return kUsageError;
}
