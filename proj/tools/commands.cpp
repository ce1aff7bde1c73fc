#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>

#include "fqkd/error.hpp"
#include "fqkd/exact.hpp"
#include "fqkd/io.hpp"
#include "fqkd/protocol.hpp"
#include "fqkd/quantum.hpp"
#include "fqkd/session.hpp"

namespace fqkd::cli {
namespace {

CommandOutcome guarded(const std::function<CommandOutcome()>& body) {
  try {
    return body();
  } catch (const PersistenceError& e) {
    return {kIoError, "", e.what()};
  } catch (const std::filesystem::filesystem_error& e) {
    return {kIoError, "", e.what()};
  } catch (const ConfigError& e) {
    return {kDomainError, "", e.what()};
  } catch (const DomainError& e) {
    return {kDomainError, "", e.what()};
  } catch (const ContractViolation& e) {
    return {kDomainError, "", e.what()};
  }
}

std::string fixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

SessionConfig build_config(const SessionRequest& request) {
  SessionConfig config = request.config ? load_session_config(*request.config) : SessionConfig{};
  if (request.dim) config.dim = *request.dim;
  if (request.rounds) config.rounds = *request.rounds;
  if (request.seed) config.seed = *request.seed;
  if (request.eve) {
    const auto strategy = parse_eve_strategy(*request.eve);
    if (!strategy) throw ConfigError("unknown eve strategy '" + *request.eve + "'");
    config.eve = *strategy;
  }
  if (request.transcript) config.transcript_output = *request.transcript;
  config.validate();
  return config;
}

std::string summary_line(const SessionReport& r) {
  std::ostringstream line;
  line << "dim=" << r.config.dim << " eve=" << to_string(r.config.eve)
       << " seed=" << r.config.seed << " sent=" << r.counts.sent
       << " sifted=" << r.counts.sifted << " errors=" << r.counts.errors
       << " qber=" << fixed(r.qber) << " ci95=[" << fixed(r.qber_interval.low) << ", "
       << fixed(r.qber_interval.high) << "]";
  if (r.exact_reference) line << " exact=" << fixed(*r.exact_reference);
  for (const std::string& w : r.warnings) line << "\nwarning: " << w;
  return line.str();
}

Json amplitude_json(const ExactState& exact, int k) {
  const std::complex<double> a = exact.amplitude(k);
  return {{"re", a.real()},
          {"im", a.imag()},
          {"exact", describe_amplitude(exact.numerators[k - 1], exact.dim, exact.scale_power)}};
}

}  // namespace

unsigned resolve_workers(std::optional<unsigned> requested) {
  if (requested) {
    if (*requested == 0) throw ConfigError("--workers must be at least 1");
    return *requested;
  }
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || value == 0 || value > 4096) {
      throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
    }
    return static_cast<unsigned>(value);
  }
  return 1;
}

CommandOutcome cmd_fiber(const std::filesystem::path& config_path) {
  return guarded([&] {
    const SessionConfig config = load_session_config(config_path);
    if (!config.fiber) {
      throw ConfigError(config_path.string() + " has no fiber section");
    }
    const FiberDesign design = design_fiber(*config.fiber, config.dim);
    Json j;
    j["dim"] = config.dim;
    j["gamma_per_w_m"] = design.params.gamma;
    j["pump_powers_w"] = {{"p1", design.params.pumps.p1},
                          {"p2", design.params.pumps.p2},
                          {"p3", design.params.pumps.p3}};
    j["solved_from_budget"] = design.solved_from_budget;
    j["kappa_rad_per_m"] = design.params.kappa;
    j["kappa_rad_per_km"] = design.params.kappa * 1e3;
    j["lambda_ft_m"] = design.params.lambda_ft;
    j["lambda_ft_km"] = design.params.lambda_ft / 1e3;
    j["half_translation_length_m"] = design.params.lambda_ft / 2.0;
    j["couplings"] = to_json(design)["couplings"];
    return CommandOutcome{kSuccess, dump_canonical(j), ""};
  });
}

CommandOutcome cmd_bases(int dim) {
  return guarded([&] {
    if (!is_supported_dim(dim)) {
      throw ConfigError("dim must be 2 or 4, got " + std::to_string(dim));
    }
    const ExactHalfTranslation& half = ExactHalfTranslation::get(dim);
    const std::vector<FrequencyState> psi = basis_states({BasisKind::Psi, dim});
    const std::vector<FrequencyState> phi = basis_states({BasisKind::Phi, dim});

    Json bases;
    for (BasisKind kind : {BasisKind::Psi, BasisKind::Phi}) {
      Json vectors = Json::array();
      for (int k = 1; k <= dim; ++k) {
        const ExactState exact =
            kind == BasisKind::Psi ? ExactState::mode(dim, k) : half.column(k);
        Json amplitudes = Json::array();
        for (int m = 1; m <= dim; ++m) amplitudes.push_back(amplitude_json(exact, m));
        vectors.push_back({{"label", std::string(to_string(kind)) + "_" + std::to_string(k)},
                           {"amplitudes", std::move(amplitudes)}});
      }
      bases[std::string(to_string(kind))] = std::move(vectors);
    }

    // |<psi_j|phi_k>|^2, both numerically and exactly.
    Json overlaps = Json::array();
    Json overlaps_exact = Json::array();
    for (int j = 1; j <= dim; ++j) {
      Json row = Json::array();
      Json row_exact = Json::array();
      for (int k = 1; k <= dim; ++k) {
        row.push_back(overlap_probability(psi[j - 1], phi[k - 1]));
        row_exact.push_back(half.column(k).probability(j).to_string());
      }
      overlaps.push_back(std::move(row));
      overlaps_exact.push_back(std::move(row_exact));
    }

    Json j;
    j["dim"] = dim;
    j["bases"] = std::move(bases);
    j["overlaps"] = std::move(overlaps);
    j["overlaps_exact"] = std::move(overlaps_exact);
    return CommandOutcome{kSuccess, dump_canonical(j), ""};
  });
}

CommandOutcome cmd_attack(int dim, const std::string& strategy_name,
                          const std::string& condition_name) {
  return guarded([&] {
    if (!is_supported_dim(dim)) {
      throw ConfigError("dim must be 2 or 4, got " + std::to_string(dim));
    }
    const auto strategy = parse_eve_strategy(strategy_name);
    if (!strategy) throw ConfigError("unknown eve strategy '" + strategy_name + "'");
    const auto condition = parse_error_condition(condition_name);
    if (!condition) throw ConfigError("unknown condition '" + condition_name + "'");

    const Fraction rate = exact_error_rate(dim, *strategy, *condition);
    Json j;
    j["dim"] = dim;
    j["strategy"] = std::string(to_string(*strategy));
    j["condition"] = std::string(to_string(*condition));
    j["error_rate"] = rate.to_string();
    j["decimal"] = rate.to_double();
    return CommandOutcome{kSuccess, dump_canonical(j), ""};
  });
}

CommandOutcome cmd_run(const SessionRequest& request) {
  return guarded([&] {
    const SessionConfig config = build_config(request);
    RunOptions options;
    options.workers = resolve_workers(request.workers);
    const SessionReport report = run_session(config, options);

    CommandOutcome outcome;
    if (request.out && request.out->string() == "-") {
      outcome.payload = dump_canonical(to_json(report));
      outcome.diagnostic = summary_line(report);
    } else {
      if (request.out) write_text_file(*request.out, dump_canonical(to_json(report)));
      outcome.payload = summary_line(report) + "\n";
    }
    return outcome;
  });
}

CommandOutcome cmd_sweep(const SweepRequest& request) {
  return guarded([&] {
    const SessionConfig base = build_config(request.session);
    RunOptions options;
    options.workers = resolve_workers(request.session.workers);
    const std::vector<SessionReport> reports =
        sweep(base, request.parameter, request.values, options);

    Json j;
    j["parameter"] = request.parameter;
    j["values"] = request.values;
    j["reports"] = Json::array();
    std::string summary;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      j["reports"].push_back(to_json(reports[i]));
      std::ostringstream value;
      value << request.values[i];
      summary += request.parameter + "=" + value.str() + " " + summary_line(reports[i]) + "\n";
    }

    CommandOutcome outcome;
    const auto& out = request.session.out;
    if (out && out->string() == "-") {
      outcome.payload = dump_canonical(j);
      outcome.diagnostic = summary;
    } else {
      if (out) write_text_file(*out, dump_canonical(j));
      outcome.payload = summary;
    }
    return outcome;
  });
}

}  // namespace fqkd::cli
