#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqkd/fiber.hpp"
#include "fqkd/protocol.hpp"

namespace fqkd {

/// Fiber description attached to a session. Either explicit pump powers or a
/// total power budget (split to phase match w_s1 -> w_s2, with P3 = P1).
struct FiberSetup {
  double gamma = 0.0;
  std::optional<PumpPowers> pumps;
  std::optional<double> power_budget;
  FrequencyGrid grid = FrequencyGrid::make(1.0, 1.0, 10.0);
  DispersionProfile dispersion = DispersionProfile::flat(0.0);
};

struct CouplingReport {
  Coupling coupling;
  double kappa;  // rad/m
  double delta;  // rad/m
};

/// Derived design of a fiber setup: resolved pump powers, kappa, lambda_FT
/// and the mismatch of every coupling used by the alphabet.
struct FiberDesign {
  FiberParams params;
  bool solved_from_budget = false;
  std::vector<CouplingReport> couplings;
};

/// Throws DomainError / InfeasibleError when the setup cannot be realized.
FiberDesign design_fiber(const FiberSetup& setup, int dim);

struct SessionConfig {
  int dim = 2;
  std::uint64_t rounds = 100000;
  EveStrategy eve = EveStrategy::None;
  ChannelModel channel;
  double alice_phi_probability = 0.5;
  double bob_phi_probability = 0.5;
  std::uint64_t seed = 1;
  std::optional<FiberSetup> fiber;
  std::optional<std::filesystem::path> transcript_output;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  ProtocolSettings protocol() const;
};

/// Associative, commutative tallies of a batch of rounds.
struct SessionCounts {
  std::uint64_t sent = 0;
  std::uint64_t lost = 0;
  std::uint64_t sifted = 0;
  std::uint64_t errors = 0;
  std::uint64_t psi_sifted = 0;
  std::uint64_t psi_errors = 0;
  std::uint64_t phi_sifted = 0;
  std::uint64_t phi_errors = 0;

  void add(const PhotonRecord& record);
  SessionCounts& operator+=(const SessionCounts& other);
  friend bool operator==(const SessionCounts&, const SessionCounts&) = default;
};

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for k successes in n trials at normal quantile z
/// (default: 95%). n = 0 gives [0, 1].
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

struct BasisBreakdown {
  std::uint64_t sifted = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
};

struct SessionReport {
  SessionConfig config;
  SessionCounts counts;
  double sift_ratio = 0.0;
  double qber = 0.0;
  Interval qber_interval;
  BasisBreakdown psi;
  BasisBreakdown phi;
  std::optional<double> exact_reference;
  std::optional<FiberDesign> fiber_design;
  std::vector<std::string> warnings;
  unsigned workers = 1;
  double elapsed_seconds = 0.0;
};

struct RunOptions {
  unsigned workers = 1;
  /// Rounds processed (and, with a transcript, buffered) per batch.
  std::uint64_t batch_size = 1u << 16;
};

/// Receives transcript records in round order.
using RecordSink = std::function<void(const PhotonRecord&)>;

/// Runs config.rounds independent rounds. Counts and transcript are
/// identical for any worker count. When config.transcript_output is set the
/// transcript is written there (PersistenceError on failure); a sink, when
/// given, sees every record too.
SessionReport run_session(const SessionConfig& config, const RunOptions& options = {},
                          const RecordSink& sink = {});

/// Field names accepted by sweep.
std::span<const std::string_view> sweepable_parameters();

/// Copy of base with `parameter` set to value. Throws ConfigError for an
/// unknown parameter or an invalid value.
SessionConfig with_parameter(const SessionConfig& base, std::string_view parameter, double value);

/// One report per value; value i runs with seed derive_seed(base.seed, i).
/// Transcripts, if configured, get a ".<i>" suffix.
std::vector<SessionReport> sweep(const SessionConfig& base, std::string_view parameter,
                                 std::span<const double> values, const RunOptions& options = {});

}  // namespace fqkd
