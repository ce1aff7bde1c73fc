#include "fqkd/session.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "fqkd/constants.hpp"
#include "fqkd/error.hpp"
#include "fqkd/io.hpp"
#include "fqkd/random.hpp"

namespace fqkd {

// ---------------------------------------------------------------------------
// Fiber design

FiberDesign design_fiber(const FiberSetup& setup, int dim) {
  require_supported_dim(dim);
  FiberDesign design;
  PumpPowers pumps;
  if (setup.power_budget) {
    const PumpPair pair = solve_pump_powers(setup.dispersion, setup.grid, setup.gamma,
                                            *setup.power_budget, kQubitCoupling);
    pumps = {pair.power_a, pair.power_b, pair.power_a};
    design.solved_from_budget = true;
  } else if (setup.pumps) {
    pumps = *setup.pumps;
  } else {
    throw DomainError("fiber setup needs pump powers or a power budget");
  }
  design.params = make_fiber_params(setup.gamma, pumps, setup.dispersion, setup.grid);

  auto report = [&](Coupling c) {
    design.couplings.push_back(
        {c, effective_nonlinearity(setup.gamma, pumps[c.pump_a], pumps[c.pump_b]),
         phase_mismatch(setup.dispersion, setup.grid, setup.gamma, pumps, c)});
  };
  if (dim == 2) {
    report(kQubitCoupling);
  } else {
    for (const Coupling& c : kQuquartCouplings) report(c);
  }
  return design;
}

// ---------------------------------------------------------------------------
// Config

void SessionConfig::validate() const {
  if (!is_supported_dim(dim)) {
    throw ConfigError("dim must be 2 or 4, got " + std::to_string(dim));
  }
  if (rounds < 1) {
    throw ConfigError("rounds must be at least 1");
  }
  auto check_probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
  };
  check_probability(alice_phi_probability, "alice_phi_probability");
  check_probability(bob_phi_probability, "bob_phi_probability");
  check_probability(channel.survival_probability, "survival_probability");
  check_probability(channel.dark_count_probability, "dark_count_probability");
}

ProtocolSettings SessionConfig::protocol() const {
  return {dim, eve, channel, alice_phi_probability, bob_phi_probability};
}

// ---------------------------------------------------------------------------
// Counting

void SessionCounts::add(const PhotonRecord& record) {
  ++sent;
  if (record.lost) ++lost;
  if (!record.sifted) return;
  const bool wrong = record.error.value_or(false);
  ++sifted;
  if (wrong) ++errors;
  if (record.alice_basis == BasisKind::Psi) {
    ++psi_sifted;
    if (wrong) ++psi_errors;
  } else {
    ++phi_sifted;
    if (wrong) ++phi_errors;
  }
}

SessionCounts& SessionCounts::operator+=(const SessionCounts& o) {
  sent += o.sent;
  lost += o.lost;
  sifted += o.sifted;
  errors += o.errors;
  psi_sifted += o.psi_sifted;
  psi_errors += o.psi_errors;
  phi_sifted += o.phi_sifted;
  phi_errors += o.phi_errors;
  return *this;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains the point estimate despite rounding.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0),
          std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

namespace {

double rate(std::uint64_t k, std::uint64_t n) {
  return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
}

// Expected QBER including dark-count clicks, which land on a uniformly random
// frequency and are wrong with probability 1 - 1/d.
std::optional<double> expected_qber(const SessionConfig& config) {
  const double a = config.alice_phi_probability;
  const double b = config.bob_phi_probability;
  if ((1.0 - a) * (1.0 - b) + a * b <= 0.0) return std::nullopt;
  const double s = config.channel.survival_probability;
  const double dark = (1.0 - s) * config.channel.dark_count_probability;
  if (s + dark <= 0.0) return std::nullopt;
  const double photon_rate =
      exact_error_rate_value(config.dim, config.eve, ErrorCondition::AllSifted, a, b);
  const double dark_rate = 1.0 - 1.0 / static_cast<double>(config.dim);
  return (s * photon_rate + dark * dark_rate) / (s + dark);
}

void annotate_fiber(const SessionConfig& config, SessionReport& report) {
  if (!config.fiber) return;
  try {
    FiberDesign design = design_fiber(*config.fiber, config.dim);
    for (const CouplingReport& c : design.couplings) {
      if (std::abs(c.delta) > kPhaseMatchWarning) {
        std::ostringstream msg;
        msg << "coupling s" << c.coupling.source << "->s" << c.coupling.target
            << " is not phase matched: delta = " << c.delta << " rad/m";
        report.warnings.push_back(msg.str());
      }
    }
    report.fiber_design = std::move(design);
  } catch (const DomainError& e) {
    report.warnings.push_back(std::string("fiber design infeasible: ") + e.what());
  }
}

struct Batch {
  SessionCounts counts;
  std::vector<PhotonRecord> records;
};

// Rounds [first, last) split into contiguous slices, one per worker.
Batch run_batch(const ProtocolSettings& settings, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, unsigned workers, bool keep_records) {
  const std::uint64_t count = last - first;
  Batch batch;
  if (keep_records) batch.records.resize(count);
  const unsigned used = static_cast<unsigned>(std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(workers, count)));
  std::vector<SessionCounts> partial(used);

  auto work = [&](unsigned w) {
    const std::uint64_t lo = first + count * w / used;
    const std::uint64_t hi = first + count * (w + 1) / used;
    for (std::uint64_t i = lo; i < hi; ++i) {
      PhotonRecord record = simulate_round(settings, seed, i);
      partial[w].add(record);
      if (keep_records) batch.records[i - first] = std::move(record);
    }
  };

  if (used == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) threads.emplace_back(work, w);
  }
  for (const SessionCounts& c : partial) batch.counts += c;
  return batch;
}

}  // namespace

SessionReport run_session(const SessionConfig& config, const RunOptions& options,
                          const RecordSink& sink) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  SessionReport report;
  report.config = config;
  report.workers = std::max(1u, options.workers);
  annotate_fiber(config, report);

  std::ofstream transcript;
  if (config.transcript_output) {
    transcript.open(*config.transcript_output, std::ios::out | std::ios::trunc);
    if (!transcript) {
      throw PersistenceError("cannot open transcript file " + config.transcript_output->string());
    }
  }
  const bool keep_records = transcript.is_open() || static_cast<bool>(sink);
  const ProtocolSettings settings = config.protocol();
  const std::uint64_t batch_size = std::max<std::uint64_t>(1, options.batch_size);

  for (std::uint64_t first = 0; first < config.rounds; first += batch_size) {
    const std::uint64_t last = std::min(config.rounds, first + batch_size);
    Batch batch = run_batch(settings, config.seed, first, last, report.workers, keep_records);
    report.counts += batch.counts;
    for (const PhotonRecord& record : batch.records) {
      if (transcript.is_open()) transcript << transcript_line(record) << '\n';
      if (sink) sink(record);
    }
    if (transcript.is_open() && !transcript) {
      throw PersistenceError("failed writing transcript " + config.transcript_output->string());
    }
  }
  if (transcript.is_open()) {
    transcript.close();
    if (!transcript) {
      throw PersistenceError("failed closing transcript " + config.transcript_output->string());
    }
  }

  const SessionCounts& c = report.counts;
  report.sift_ratio = rate(c.sifted, c.sent);
  report.qber = rate(c.errors, c.sifted);
  report.qber_interval = wilson_interval(c.errors, c.sifted);
  report.psi = {c.psi_sifted, c.psi_errors, rate(c.psi_errors, c.psi_sifted)};
  report.phi = {c.phi_sifted, c.phi_errors, rate(c.phi_errors, c.phi_sifted)};
  report.exact_reference = expected_qber(config);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

constexpr std::array<std::string_view, 6> kSweepable{
    "dim",
    "survival_probability",
    "dark_count_probability",
    "alice_phi_probability",
    "bob_phi_probability",
    "phi_probability",
};

}  // namespace

std::span<const std::string_view> sweepable_parameters() { return kSweepable; }

SessionConfig with_parameter(const SessionConfig& base, std::string_view parameter, double value) {
  SessionConfig config = base;
  if (parameter == "dim") {
    if (value != 2.0 && value != 4.0) {
      throw ConfigError("dim must be 2 or 4");
    }
    config.dim = static_cast<int>(value);
  } else if (parameter == "survival_probability") {
    config.channel.survival_probability = value;
  } else if (parameter == "dark_count_probability") {
    config.channel.dark_count_probability = value;
  } else if (parameter == "alice_phi_probability") {
    config.alice_phi_probability = value;
  } else if (parameter == "bob_phi_probability") {
    config.bob_phi_probability = value;
  } else if (parameter == "phi_probability") {
    config.alice_phi_probability = value;
    config.bob_phi_probability = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + std::string(parameter) + "'");
  }
  config.validate();
  return config;
}

std::vector<SessionReport> sweep(const SessionConfig& base, std::string_view parameter,
                                 std::span<const double> values, const RunOptions& options) {
  if (values.empty()) {
    throw ConfigError("sweep needs at least one value");
  }
  std::vector<SessionConfig> configs;
  configs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SessionConfig config = with_parameter(base, parameter, values[i]);
    config.seed = derive_seed(base.seed, i);
    if (base.transcript_output) {
      std::filesystem::path path = *base.transcript_output;
      path += "." + std::to_string(i);
      config.transcript_output = path;
    }
    configs.push_back(std::move(config));
  }
  std::vector<SessionReport> reports;
  reports.reserve(configs.size());
  for (const SessionConfig& config : configs) {
    reports.push_back(run_session(config, options));
  }
  return reports;
}

}  // namespace fqkd
