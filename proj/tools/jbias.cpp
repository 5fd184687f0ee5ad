#include <iostream>

#include "CLI11.hpp"

#include "judgebias/cli.hpp"

namespace cli = judgebias::cli;

int main(int argc, char** argv) {
  CLI::App app{"Multi-evaluator self-bias analysis for LLM judges"};
  app.set_version_flag("--version", std::string(judgebias::kToolkitVersion));
  app.require_subcommand(1);

  cli::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load runs, summaries, human ratings or validation inputs into a store");
  ingest_cmd->add_option("--store", ingest.store, "Store directory")->required();
  ingest_cmd->add_option("--format", ingest.format, "runs|summaries|human|assignments|empirical")->required();
  ingest_cmd->add_option("path", ingest.path, "Input file")->required();
  ingest_cmd->add_option("--config", ingest.config, "Roster/alias JSON config");
  ingest_cmd->add_option("--manifest", ingest.manifest, "Campaign manifest accompanying a run store");
  ingest_cmd->add_option("--tolerance", ingest.tolerance, "Linearity tolerance for summaries");

  cli::AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Build score and bias matrices and the reduction report");
  analyze_cmd->add_option("--store", analyze.store, "Store directory")->required();
  analyze_cmd->add_option("--condition", analyze.condition, "attributed|anonymized|both");
  analyze_cmd->add_option("--rounding", analyze.rounding, "display-2dp|raw");
  analyze_cmd->add_option("--out", analyze.out_dir, "Output directory (default: the store)");
  analyze_cmd->add_flag("--allow-partial", analyze.allow_partial, "Analyze complete cells of a partial campaign");
  analyze_cmd->add_option("--tolerance", analyze.tolerance, "Linearity tolerance");

  cli::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Verify structural properties of the store's matrices");
  check_cmd->add_option("--store", check.store, "Store directory")->required();
  check_cmd->add_option("--tolerance", check.tolerance, "Zero-sum tolerance override");
  check_cmd->add_flag("--allow-partial", check.allow_partial, "Check complete cells of a partial campaign");

  cli::SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a mock campaign with injected bias and check recovery");
  simulate_cmd->add_option("--signature", simulate.signature, "Mock judge signature JSON")->required();
  simulate_cmd->add_option("--store", simulate.store, "Store directory")->required();
  simulate_cmd->add_option("--runs", simulate.runs, "Runs per cell");
  simulate_cmd->add_option("--seed", simulate.seed, "Seed override");
  simulate_cmd->add_option("--concurrency", simulate.concurrency, "Concurrent requests");
  simulate_cmd->add_option("--rounding", simulate.rounding, "display-2dp|raw");

  cli::ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Rank-correlate risk assignments against empirical risk");
  validate_cmd->add_option("--assignments", validate.assignments, "Assignments CSV")->required();
  validate_cmd->add_option("--empirical", validate.empirical, "Empirical indicators CSV")->required();
  validate_cmd->add_option("--config", validate.config, "JSON config with indicator weights");
  validate_cmd->add_option("--p-method", validate.p_method, "permutation|t-approx");
  validate_cmd->add_option("--permutations", validate.permutations, "Sampled permutations when n > 8");
  validate_cmd->add_option("--seed", validate.seed, "Permutation seed");
  validate_cmd->add_option("--out", validate.out, "Write a JSON report here");

  std::string fixtures_dir;
  auto* export_cmd = app.add_subcommand("export-fixtures", "Write the bundled fixtures to a directory");
  export_cmd->add_option("dir", fixtures_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*ingest_cmd) return cli::guarded([&] { return cli::cmd_ingest(ingest, out); }, err);
  if (*analyze_cmd) return cli::guarded([&] { return cli::cmd_analyze(analyze, out); }, err);
  if (*check_cmd) return cli::guarded([&] { return cli::cmd_check(check, out); }, err);
  if (*simulate_cmd) return cli::guarded([&] { return cli::cmd_simulate(simulate, out); }, err);
  if (*validate_cmd) return cli::guarded([&] { return cli::cmd_validate(validate, out); }, err);
  return cli::guarded([&] { return cli::cmd_export_fixtures(fixtures_dir, out); }, err);
}
