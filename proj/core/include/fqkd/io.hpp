#pragma once

// Configuration and report formats.
//
// Configs and reports are JSON objects with a fixed key order; transcripts
// are JSON Lines, one PhotonRecord per line in round order. The schema is
// documented in docs/config.md.

#include <filesystem>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "fqkd/session.hpp"

namespace fqkd {

using Json = nlohmann::ordered_json;

/// Angular frequency in rad/s of a frequency given in THz.
double thz_to_rad_per_s(double thz);

/// Throws ConfigError on a missing field, wrong type, unknown key or
/// invalid value.
SessionConfig parse_session_config(const Json& json);
FiberSetup parse_fiber_setup(const Json& json);

/// Throws PersistenceError when the file cannot be read and ConfigError
/// when it is not valid JSON or not a valid config.
Json read_json_file(const std::filesystem::path& path);
SessionConfig load_session_config(const std::filesystem::path& path);

Json to_json(const SessionConfig& config);
Json to_json(const FiberSetup& setup);
Json to_json(const FiberDesign& design);
Json to_json(const PhotonRecord& record);
/// include_runtime adds worker count and wall time; leave it off when
/// comparing reports byte for byte.
Json to_json(const SessionReport& report, bool include_runtime = true);

/// One compact transcript line (no trailing newline).
std::string transcript_line(const PhotonRecord& record);

/// Pretty-printed canonical form with a trailing newline.
std::string dump_canonical(const Json& json);

/// Throws PersistenceError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace fqkd
