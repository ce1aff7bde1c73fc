#include "fqkd/io.hpp"

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "fqkd/error.hpp"

namespace fqkd {
namespace {

// Reject keys outside the schema so typos do not silently fall back to
// defaults.
void require_known_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                        std::string_view where) {
  if (!object.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : object.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

double get_number(const Json& object, std::string_view key, std::string_view where) {
  const Json& value = object.at(std::string(key));
  if (!value.is_number()) {
    throw ConfigError(std::string(where) + "." + std::string(key) + " must be a number");
  }
  return value.get<double>();
}

std::optional<double> find_number(const Json& object, std::string_view key,
                                  std::string_view where) {
  if (!object.contains(std::string(key))) return std::nullopt;
  return get_number(object, key, where);
}

std::uint64_t get_unsigned(const Json& object, std::string_view key, std::string_view where) {
  const Json& value = object.at(std::string(key));
  if (!value.is_number_integer() || (value.is_number_integer() && !value.is_number_unsigned() &&
                                     value.get<std::int64_t>() < 0)) {
    throw ConfigError(std::string(where) + "." + std::string(key) +
                      " must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

// A frequency given either as "<name>_rad_s" or "<name>_thz" (exactly one).
double get_frequency(const Json& object, const std::string& name, std::string_view where) {
  const auto rad = find_number(object, name + "_rad_s", where);
  const auto thz = find_number(object, name + "_thz", where);
  if (rad.has_value() == thz.has_value()) {
    throw ConfigError(std::string(where) + " needs exactly one of " + name + "_rad_s, " + name +
                      "_thz");
  }
  return rad ? *rad : thz_to_rad_per_s(*thz);
}

Json optional_json(const std::optional<int>& value) {
  return value ? Json(*value) : Json(nullptr);
}

}  // namespace

double thz_to_rad_per_s(double thz) { return 2.0 * std::numbers::pi * thz * 1e12; }

// ---------------------------------------------------------------------------
// Parsing

FiberSetup parse_fiber_setup(const Json& json) {
  constexpr std::string_view where = "fiber";
  require_known_keys(json, {"gamma", "pump_powers_w", "power_budget_w", "grid", "dispersion"},
                     where);
  try {
    FiberSetup setup;
    setup.gamma = get_number(json, "gamma", where);
    if (!(setup.gamma > 0.0)) {
      throw ConfigError("fiber.gamma must be positive (1/(W m))");
    }

    const bool has_pumps = json.contains("pump_powers_w");
    const bool has_budget = json.contains("power_budget_w");
    if (has_pumps == has_budget) {
      throw ConfigError("fiber needs exactly one of pump_powers_w, power_budget_w");
    }
    if (has_pumps) {
      const Json& p = json.at("pump_powers_w");
      require_known_keys(p, {"p1", "p2", "p3"}, "fiber.pump_powers_w");
      PumpPowers pumps;
      pumps.p1 = get_number(p, "p1", "fiber.pump_powers_w");
      pumps.p2 = get_number(p, "p2", "fiber.pump_powers_w");
      pumps.p3 = find_number(p, "p3", "fiber.pump_powers_w").value_or(pumps.p1);
      if (!(pumps.p1 >= 0.0 && pumps.p2 >= 0.0 && pumps.p3 >= 0.0)) {
        throw ConfigError("fiber pump powers must be non-negative");
      }
      setup.pumps = pumps;
    } else {
      setup.power_budget = get_number(json, "power_budget_w", where);
    }

    const Json& grid = json.at("grid");
    require_known_keys(grid,
                       {"signal_start_rad_s", "signal_start_thz", "spacing_rad_s", "spacing_thz",
                        "pump1_rad_s", "pump1_thz"},
                       "fiber.grid");
    setup.grid = FrequencyGrid::make(get_frequency(grid, "signal_start", "fiber.grid"),
                                     get_frequency(grid, "spacing", "fiber.grid"),
                                     get_frequency(grid, "pump1", "fiber.grid"));

    const Json& dispersion = json.at("dispersion");
    require_known_keys(dispersion, {"reference_rad_s", "reference_thz", "coefficients"},
                       "fiber.dispersion");
    const Json& coefficients = dispersion.at("coefficients");
    if (!coefficients.is_array() || coefficients.empty()) {
      throw ConfigError("fiber.dispersion.coefficients must be a non-empty array");
    }
    std::vector<double> betas;
    for (const Json& c : coefficients) {
      if (!c.is_number()) {
        throw ConfigError("fiber.dispersion.coefficients must hold numbers");
      }
      betas.push_back(c.get<double>());
    }
    setup.dispersion = DispersionProfile(
        get_frequency(dispersion, "reference", "fiber.dispersion"), std::move(betas));
    return setup;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("fiber: ") + e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("fiber: ") + e.what());
  }
}

SessionConfig parse_session_config(const Json& json) {
  constexpr std::string_view where = "config";
  require_known_keys(json,
                     {"dim", "rounds", "seed", "eve", "alice_phi_probability",
                      "bob_phi_probability", "channel", "fiber", "transcript_output"},
                     where);
  try {
    SessionConfig config;
    if (json.contains("dim")) {
      config.dim = static_cast<int>(get_unsigned(json, "dim", where));
    }
    if (json.contains("rounds")) config.rounds = get_unsigned(json, "rounds", where);
    if (json.contains("seed")) config.seed = get_unsigned(json, "seed", where);
    if (json.contains("eve")) {
      const Json& eve = json.at("eve");
      if (!eve.is_string()) throw ConfigError("config.eve must be a string");
      const auto strategy = parse_eve_strategy(eve.get<std::string>());
      if (!strategy) {
        throw ConfigError("unknown eve strategy '" + eve.get<std::string>() + "'");
      }
      config.eve = *strategy;
    }
    config.alice_phi_probability =
        find_number(json, "alice_phi_probability", where).value_or(config.alice_phi_probability);
    config.bob_phi_probability =
        find_number(json, "bob_phi_probability", where).value_or(config.bob_phi_probability);
    if (json.contains("channel")) {
      const Json& channel = json.at("channel");
      require_known_keys(channel, {"survival_probability", "dark_count_probability"},
                         "config.channel");
      config.channel.survival_probability =
          find_number(channel, "survival_probability", "config.channel").value_or(1.0);
      config.channel.dark_count_probability =
          find_number(channel, "dark_count_probability", "config.channel").value_or(0.0);
    }
    if (json.contains("fiber")) {
      config.fiber = parse_fiber_setup(json.at("fiber"));
    }
    if (json.contains("transcript_output")) {
      const Json& path = json.at("transcript_output");
      if (!path.is_string()) throw ConfigError("config.transcript_output must be a string");
      config.transcript_output = path.get<std::string>();
    }
    config.validate();
    return config;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw PersistenceError("cannot read " + path.string());
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

SessionConfig load_session_config(const std::filesystem::path& path) {
  return parse_session_config(read_json_file(path));
}

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const FiberSetup& setup) {
  Json j;
  j["gamma"] = setup.gamma;
  if (setup.pumps) {
    j["pump_powers_w"] = {{"p1", setup.pumps->p1}, {"p2", setup.pumps->p2}, {"p3", setup.pumps->p3}};
  }
  if (setup.power_budget) j["power_budget_w"] = *setup.power_budget;
  j["grid"] = {{"signal_start_rad_s", setup.grid.signal(1)},
               {"spacing_rad_s", setup.grid.spacing()},
               {"pump1_rad_s", setup.grid.pump(1)}};
  j["dispersion"] = {{"reference_rad_s", setup.dispersion.reference_frequency()},
                     {"coefficients", setup.dispersion.coefficients()}};
  return j;
}

Json to_json(const SessionConfig& config) {
  Json j;
  j["dim"] = config.dim;
  j["rounds"] = config.rounds;
  j["seed"] = config.seed;
  j["eve"] = std::string(to_string(config.eve));
  j["alice_phi_probability"] = config.alice_phi_probability;
  j["bob_phi_probability"] = config.bob_phi_probability;
  j["channel"] = {{"survival_probability", config.channel.survival_probability},
                  {"dark_count_probability", config.channel.dark_count_probability}};
  if (config.fiber) j["fiber"] = to_json(*config.fiber);
  if (config.transcript_output) j["transcript_output"] = config.transcript_output->string();
  return j;
}

Json to_json(const FiberDesign& design) {
  Json j;
  j["gamma"] = design.params.gamma;
  j["pump_powers_w"] = {{"p1", design.params.pumps.p1},
                        {"p2", design.params.pumps.p2},
                        {"p3", design.params.pumps.p3}};
  j["solved_from_budget"] = design.solved_from_budget;
  j["kappa_rad_per_m"] = design.params.kappa;
  j["lambda_ft_m"] = design.params.lambda_ft;
  j["half_translation_length_m"] = design.params.lambda_ft / 2.0;
  Json couplings = Json::array();
  for (const CouplingReport& c : design.couplings) {
    couplings.push_back({{"source", c.coupling.source},
                         {"target", c.coupling.target},
                         {"pumps", {c.coupling.pump_a, c.coupling.pump_b}},
                         {"kappa_rad_per_m", c.kappa},
                         {"delta_rad_per_m", c.delta}});
  }
  j["couplings"] = std::move(couplings);
  return j;
}

Json to_json(const PhotonRecord& r) {
  Json j;
  j["round"] = r.index;
  j["alice_basis"] = std::string(to_string(r.alice_basis));
  j["alice_symbol"] = r.alice_symbol.value;
  j["eve_acted"] = r.eve_acted;
  j["eve_basis"] = r.eve_basis ? Json(std::string(to_string(*r.eve_basis))) : Json(nullptr);
  j["eve_outcome"] = optional_json(r.eve_outcome);
  j["lost"] = r.lost;
  j["dark_count"] = r.dark_count;
  j["bob_basis"] = std::string(to_string(r.bob_basis));
  j["bob_outcome"] = optional_json(r.bob_outcome);
  j["bob_symbol"] = r.bob_symbol ? Json(r.bob_symbol->value) : Json(nullptr);
  j["sifted"] = r.sifted;
  j["error"] = r.error ? Json(*r.error) : Json(nullptr);
  return j;
}

Json to_json(const SessionReport& report, bool include_runtime) {
  const SessionCounts& c = report.counts;
  Json j;
  j["config"] = to_json(report.config);
  j["counts"] = {{"sent", c.sent}, {"lost", c.lost}, {"sifted", c.sifted}, {"errors", c.errors}};
  j["sift_ratio"] = report.sift_ratio;
  j["qber"] = report.qber;
  j["qber_interval"] = {{"method", "wilson"},
                        {"confidence", 0.95},
                        {"low", report.qber_interval.low},
                        {"high", report.qber_interval.high}};
  auto breakdown = [](const BasisBreakdown& b) {
    return Json{{"sifted", b.sifted}, {"errors", b.errors}, {"error_rate", b.error_rate}};
  };
  j["per_basis"] = {{"psi_psi", breakdown(report.psi)}, {"phi_phi", breakdown(report.phi)}};
  j["exact_reference"] =
      report.exact_reference ? Json(*report.exact_reference) : Json(nullptr);
  j["fiber_design"] = report.fiber_design ? to_json(*report.fiber_design) : Json(nullptr);
  j["warnings"] = report.warnings;
  if (include_runtime) {
    j["runtime"] = {{"workers", report.workers}, {"elapsed_seconds", report.elapsed_seconds}};
  }
  return j;
}

std::string transcript_line(const PhotonRecord& record) { return to_json(record).dump(); }

std::string dump_canonical(const Json& json) { return json.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) {
    throw PersistenceError("cannot open " + path.string() + " for writing");
  }
  out << contents;
  out.close();
  if (!out) {
    throw PersistenceError("failed writing " + path.string());
  }
}

}  // namespace fqkd
