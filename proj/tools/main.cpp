// fqkd: frequency-coded BB84 design and simulation tool.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using fqkd::cli::CommandOutcome;
using fqkd::cli::SessionRequest;

void add_session_options(CLI::App& cmd, SessionRequest& request) {
  cmd.add_option("config", request.config, "Session config (JSON)");
  cmd.add_option("--dim", request.dim, "Alphabet size: 2 (qubits) or 4 (qu-quarts)");
  cmd.add_option("--rounds", request.rounds, "Number of photons sent");
  cmd.add_option("--seed", request.seed, "Master seed");
  cmd.add_option("--eve", request.eve,
                 "none | intercept-resend-psi | intercept-resend-random-basis");
  cmd.add_option("--transcript", request.transcript, "Write a JSON Lines round transcript");
  cmd.add_option("--out", request.out, "Write the JSON report here ('-' for stdout)");
  cmd.add_option("--workers", request.workers,
                 "Worker threads (default: $FQKD_WORKERS or 1); results do not depend on it");
}

int emit(const CommandOutcome& outcome) {
  std::cout << outcome.payload;
  if (!outcome.diagnostic.empty()) {
    std::cerr << outcome.diagnostic;
    if (outcome.diagnostic.back() != '\n') std::cerr << '\n';
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-coded BB84 over quantum frequency translation"};
  app.require_subcommand(1);

  std::string fiber_config;
  auto* fiber = app.add_subcommand("fiber", "Fiber design: kappa, delta per coupling, lambda_FT");
  fiber->add_option("config", fiber_config, "Config file with a fiber section")->required();

  int bases_dim = 2;
  auto* bases = app.add_subcommand("bases", "Print psi/phi bases and their overlaps");
  bases->add_option("--dim", bases_dim, "2 or 4");

  int attack_dim = 2;
  std::string attack_eve = "intercept-resend-psi";
  std::string attack_condition = "all";
  auto* attack = app.add_subcommand("attack", "Exact error rate introduced by an eavesdropper");
  attack->add_option("--dim", attack_dim, "2 or 4");
  attack->add_option("--eve", attack_eve,
                     "none | intercept-resend-psi | intercept-resend-random-basis");
  attack->add_option("--condition", attack_condition, "all | phi-only");

  SessionRequest run_request;
  auto* run = app.add_subcommand("run", "Monte Carlo protocol session");
  add_session_options(*run, run_request);

  fqkd::cli::SweepRequest sweep_request;
  auto* sweep = app.add_subcommand("sweep", "Run one session per parameter value");
  add_session_options(*sweep, sweep_request.session);
  sweep->add_option("--param", sweep_request.parameter, "Config field to sweep")->required();
  sweep->add_option("--values", sweep_request.values, "Comma-separated values")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fqkd::cli::kDomainError;
  }

  if (*fiber) return emit(fqkd::cli::cmd_fiber(fiber_config));
  if (*bases) return emit(fqkd::cli::cmd_bases(bases_dim));
  if (*attack) return emit(fqkd::cli::cmd_attack(attack_dim, attack_eve, attack_condition));
  if (*run) return emit(fqkd::cli::cmd_run(run_request));
  if (*sweep) return emit(fqkd::cli::cmd_sweep(sweep_request));
  return fqkd::cli::kDomainError;
}
