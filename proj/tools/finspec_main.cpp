// Command-line surface of the toolkit: configuration ingestion, command
// dispatch, verification campaigns, and report emission. Reports written to
// stdout are deterministic for a fixed config and seed; timings go to
// stderr so report bodies can be compared byte for byte.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finspec/campaign.hpp"
#include "finspec/config.hpp"
#include "finspec/norm_ladder.hpp"

namespace {

using finspec::Operator;

struct CommonOpts {
  std::string config_path;
  int instances = 0;       // 0 = command default
  std::int64_t seed = -1;  // < 0 = config seed
  int depth = 0;           // 0 = config depth
  std::string json_path;
  int amplify_order = 2;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "path to the JSON config file")
      ->required();
  cmd->add_option("--instances", o.instances,
                  "random instances per campaign property");
  cmd->add_option("--seed", o.seed, "override the config seed");
  cmd->add_option("--depth", o.depth, "override the ladder depth (1..6)");
  cmd->add_option("--json", o.json_path, "also write the report as JSON");
}

std::uint64_t pick_seed(const finspec::ToolConfig& cfg, const CommonOpts& o) {
  if (o.seed >= 0) return static_cast<std::uint64_t>(o.seed);
  if (!cfg.triples.empty()) return cfg.triples.front().seed;
  return 1;
}

std::vector<finspec::FiniteSpectralTriple> build_triples(
    const finspec::ToolConfig& cfg, const CommonOpts& o) {
  if (cfg.triples.empty())
    throw finspec::ValidationError("config declares no triples");
  std::vector<finspec::FiniteSpectralTriple> triples;
  for (const finspec::TripleConfig& tc : cfg.triples) {
    finspec::TripleConfig local = tc;
    if (o.depth > 0) local.ladder_depth = std::min(o.depth, 6);
    triples.push_back(local.build());
  }
  return triples;
}

int finish(const finspec::VerificationReport& report, const CommonOpts& o,
           std::chrono::steady_clock::time_point started) {
  finspec::print_report(std::cout, report);
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path);
    if (!out)
      throw finspec::Error("cannot open JSON output path " + o.json_path);
    out << finspec::report_json(report).dump(2) << "\n";
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  std::cerr << "wall_seconds: " << wall << "\n";
  return report.all_pass() ? 0 : 1;
}

int run_verify(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  const auto triples = build_triples(cfg, o);
  const int instances = o.instances > 0 ? o.instances : 200;
  int depth = o.depth > 0 ? o.depth : cfg.triples.front().ladder_depth;
  depth = std::min(depth, 6);

  finspec::VerificationReport report;
  report.campaign = "verify";
  report.seed = pick_seed(cfg, o);
  finspec::Rng rng(report.seed);

  finspec::append_ladder_suite(report, triples, instances, rng, depth);
  finspec::append_product_bound_suite(report, triples, instances, rng,
                                      std::min(depth, 4));
  finspec::append_exp_suite(report, triples, std::max(instances / 5, 8), rng);
  finspec::append_omega_suite(report, finspec::standard_omega_cases(),
                              std::max(instances / 10, 6), rng);
  finspec::append_trace_suite(report, triples, instances, rng);
  return finish(report, o, started);
}

int run_exp_check(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  const auto triples = build_triples(cfg, o);
  finspec::VerificationReport report;
  report.campaign = "exp-check";
  report.seed = pick_seed(cfg, o);
  finspec::Rng rng(report.seed);
  finspec::append_exp_suite(report, triples,
                            o.instances > 0 ? o.instances : 40, rng);
  return finish(report, o, started);
}

int run_trace_check(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  const auto triples = build_triples(cfg, o);
  finspec::VerificationReport report;
  report.campaign = "trace-check";
  report.seed = pick_seed(cfg, o);
  finspec::Rng rng(report.seed);
  finspec::append_trace_suite(report, triples,
                              o.instances > 0 ? o.instances : 100, rng);
  return finish(report, o, started);
}

int run_amplify(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  const auto triples = build_triples(cfg, o);
  if (o.amplify_order < 1 || o.amplify_order > 8)
    throw finspec::ValidationError("amplify order must lie in [1, 8]");
  finspec::VerificationReport report;
  report.campaign = "amplify";
  report.seed = pick_seed(cfg, o);
  finspec::Rng rng(report.seed);
  for (const auto& t : triples)
    finspec::append_amplify_suite(report, t, o.amplify_order,
                                  o.instances > 0 ? o.instances : 60, rng);
  return finish(report, o, started);
}

int run_norms(const CommonOpts& o) {
  const auto started = std::chrono::steady_clock::now();
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  const auto triples = build_triples(cfg, o);
  const std::uint64_t seed = pick_seed(cfg, o);
  finspec::Rng rng(seed);
  nlohmann::json json_out;
  json_out["command"] = "norms";
  json_out["seed"] = seed;
  json_out["reports"] = nlohmann::json::array();

  std::cout << "command: norms\nseed: " << seed << "\n";
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const finspec::TripleConfig& tc = cfg.triples[i];
    const finspec::FiniteSpectralTriple& t = triples[i];
    const int depth = o.depth > 0 ? std::min(o.depth, 6) : tc.ladder_depth;

    std::vector<finspec::NamedElement> elements = tc.elements;
    if (elements.empty()) {
      const int samples = o.instances > 0 ? o.instances : 3;
      for (int s = 0; s < samples; ++s)
        elements.push_back({"sample_" + std::to_string(s),
                            finspec::random_algebra_element(t.algebra(), rng)});
    }
    for (const auto& el : elements) {
      const auto report = finspec::norm_ladder(t, el.matrix, depth, el.label);
      std::cout << "triple " << tc.name << " element " << el.label << "\n";
      std::cout << "  level seminorm ladder_norm\n";
      nlohmann::json jr;
      jr["triple"] = tc.name;
      jr["element"] = el.label;
      jr["seminorms"] = nlohmann::json::array();
      jr["norms"] = nlohmann::json::array();
      for (int k = 0; k <= report.depth; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        std::cout << "  " << k << " "
                  << finspec::format_double(report.seminorms[ks]) << " "
                  << finspec::format_double(report.norms[ks]) << "\n";
        jr["seminorms"].push_back(finspec::format_double(report.seminorms[ks]));
        jr["norms"].push_back(finspec::format_double(report.norms[ks]));
      }
      json_out["reports"].push_back(std::move(jr));
    }
  }
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path);
    out << json_out.dump(2) << "\n";
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  std::cerr << "wall_seconds: " << wall << "\n";
  return 0;
}

int run_group_check(const CommonOpts& o) {
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  if (cfg.group_checks.empty())
    throw finspec::ValidationError("config declares no group_checks");
  bool all_members = true;
  for (std::size_t i = 0; i < cfg.group_checks.size(); ++i) {
    const finspec::GroupCheckConfig& gc = cfg.group_checks[i];
    const Eigen::Index dim = gc.element.rows();
    std::vector<Operator> gens;
    for (Eigen::Index k = 0; k + 1 < dim; ++k)
      gens.push_back(finspec::matrix_unit(dim, k, k + 1));
    const finspec::StarAlgebra full =
        finspec::StarAlgebra::close_from_generators(dim, gens);
    const finspec::OmegaForm form = finspec::OmegaForm::make(
        finspec::family_omega(gc.family, dim, gc.p, gc.q), full);

    const auto blocks =
        finspec::classify_blocks(gc.family, gc.element, gc.kind, gc.p, gc.q);
    const auto direct = gc.kind == finspec::MembershipKind::group
                            ? form.group_membership(gc.element)
                            : form.lie_algebra_membership(gc.element);

    std::cout << "check " << i
              << ": family=" << finspec::family_name(gc.family)
              << " membership="
              << (gc.kind == finspec::MembershipKind::group ? "group"
                                                            : "lie_algebra")
              << "\n";
    for (const auto& eqn : blocks.equations)
      std::cout << "  equation '" << eqn.equation
                << "' residual=" << finspec::format_double(eqn.residual)
                << (eqn.residual <= blocks.tolerance ? " ok" : " VIOLATED")
                << "\n";
    std::cout << "  defining_relation residual="
              << finspec::format_double(direct.residual) << "\n";
    std::cout << "  blocks=" << (blocks.pass ? "member" : "not_a_member")
              << " relation=" << (direct.inside ? "member" : "not_a_member")
              << " agreement=" << (blocks.pass == direct.inside ? "yes" : "NO")
              << "\n";
    all_members = all_members && blocks.pass && direct.inside &&
                  (blocks.pass == direct.inside);
  }
  std::cout << "result: " << (all_members ? "PASS" : "FAIL") << "\n";
  return all_members ? 0 : 1;
}

int run_dixmier(const CommonOpts& o) {
  const finspec::ToolConfig cfg = finspec::load_config(o.config_path);
  if (!cfg.dixmier)
    throw finspec::ValidationError("config declares no dixmier section");
  const finspec::DixmierConfig& dc = *cfg.dixmier;
  const finspec::DixmierEstimate est = finspec::hypertrace_estimate(
      dc.weight, dc.dirac_eigenvalues, dc.d, dc.checkpoints);

  std::cout << "command: dixmier\nd: " << finspec::format_double(dc.d)
            << "\nsequence_length: " << dc.dirac_eigenvalues.size() << "\n";
  std::cout << "  N logarithmic_mean\n";
  nlohmann::json json_out;
  json_out["command"] = "dixmier";
  json_out["checkpoints"] = nlohmann::json::array();
  for (const auto& cp : est.partial_means) {
    std::cout << "  " << cp.n << " " << finspec::format_double(cp.mean)
              << "\n";
    json_out["checkpoints"].push_back(
        {{"n", cp.n}, {"mean", finspec::format_double(cp.mean)}});
  }
  std::cout << "extrapolated: " << finspec::format_double(est.extrapolated)
            << "\nconverged: " << (est.converged ? "yes" : "no") << "\n";
  json_out["extrapolated"] = finspec::format_double(est.extrapolated);
  json_out["converged"] = est.converged;
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path);
    out << json_out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite spectral triple verification toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  int exit_code = 0;
  auto wrap = [&exit_code, &opts](int (*fn)(const CommonOpts&)) {
    return [fn, &exit_code, &opts]() { exit_code = fn(opts); };
  };

  add_common(app.add_subcommand("verify",
                                "run the full invariant suite on the "
                                "configured triples"),
             opts);
  add_common(app.add_subcommand("norms",
                                "emit seminorm/norm ladder reports for "
                                "configured or random elements"),
             opts);
  add_common(app.add_subcommand("exp-check",
                                "exponential-map checks: flow equation, "
                                "derivative, round trip, remainder decay"),
             opts);
  add_common(app.add_subcommand("trace-check",
                                "trace axioms, kernel projection, "
                                "separation witnesses"),
             opts);
  add_common(app.add_subcommand("group-check",
                                "evaluate group/Lie-algebra membership and "
                                "block equations for configured elements"),
             opts);
  add_common(app.add_subcommand("dixmier",
                                "logarithmic means of a configured "
                                "eigenvalue sequence"),
             opts);
  CLI::App* amplify_cmd = app.add_subcommand(
      "amplify",
      "rebuild the triples at matrix order n and re-run the ladder suites");
  add_common(amplify_cmd, opts);
  amplify_cmd->add_option("--n", opts.amplify_order,
                          "amplification order (default 2)");

  app.get_subcommand("verify")->callback(wrap(run_verify));
  app.get_subcommand("norms")->callback(wrap(run_norms));
  app.get_subcommand("exp-check")->callback(wrap(run_exp_check));
  app.get_subcommand("trace-check")->callback(wrap(run_trace_check));
  app.get_subcommand("group-check")->callback(wrap(run_group_check));
  app.get_subcommand("dixmier")->callback(wrap(run_dixmier));
  amplify_cmd->callback(wrap(run_amplify));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const finspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
