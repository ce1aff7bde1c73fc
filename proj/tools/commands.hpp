#pragma once

// Subcommands of the fqkd tool. Each returns its stdout payload and exit
// code instead of printing, so tests can drive them directly.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fqkd::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDomainError = 1,  // invalid arguments, configuration, infeasible design
  kIoError = 2,      // unreadable input, unwritable output
};

struct CommandOutcome {
  int exit_code = kSuccess;
  std::string payload;     // stdout
  std::string diagnostic;  // stderr
};

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "FQKD_WORKERS";

/// Options shared by run and sweep. Flags override the config file.
struct SessionRequest {
  std::optional<std::filesystem::path> config;
  std::optional<int> dim;
  std::optional<std::uint64_t> rounds;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> eve;
  std::optional<std::filesystem::path> transcript;
  /// Report destination; "-" prints the JSON report instead of the summary.
  std::optional<std::filesystem::path> out;
  std::optional<unsigned> workers;
};

struct SweepRequest {
  SessionRequest session;
  std::string parameter;
  std::vector<double> values;
};

CommandOutcome cmd_fiber(const std::filesystem::path& config);
CommandOutcome cmd_bases(int dim);
CommandOutcome cmd_attack(int dim, const std::string& strategy, const std::string& condition);
CommandOutcome cmd_run(const SessionRequest& request);
CommandOutcome cmd_sweep(const SweepRequest& request);

/// Worker count from the request, else $FQKD_WORKERS, else 1.
unsigned resolve_workers(std::optional<unsigned> requested);

}  // namespace fqkd::cli
