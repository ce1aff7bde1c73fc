#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fqkd/error.hpp"
#include "fqkd/io.hpp"

using namespace fqkd;
using namespace fqkd::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = FQKD_CONFIG_DIR;

Json payload_json(const CommandOutcome& out) {
  EXPECT_EQ(out.exit_code, kSuccess) << out.diagnostic;
  return Json::parse(out.payload);
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("fqkd_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

SessionRequest request(int dim, const std::string& eve, std::uint64_t rounds = 100000) {
  SessionRequest r;
  r.dim = dim;
  r.eve = eve;
  r.rounds = rounds;
  r.seed = 1;
  return r;
}

double field(const std::string& summary, const std::string& key) {
  const auto pos = summary.find(key + "=");
  EXPECT_NE(pos, std::string::npos) << key;
  return std::stod(summary.substr(pos + key.size() + 1));
}

}  // namespace

// ---------------------------------------------------------------------------
// fiber

TEST(CmdFiber, FlatDispersionExample) {
  const Json j = payload_json(cmd_fiber(kConfigDir / "qubit_session.json"));
  EXPECT_NEAR(j["kappa_rad_per_km"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["lambda_ft_km"].get<double>(), 0.7854, 1e-4);
  EXPECT_EQ(j["couplings"][0]["delta_rad_per_m"].get<double>(), 0.0);
  EXPECT_FALSE(j["solved_from_budget"].get<bool>());
}

TEST(CmdFiber, BudgetModeReportsSolvedPowers) {
  const Json j = payload_json(cmd_fiber(kConfigDir / "ququart_budget.json"));
  EXPECT_TRUE(j["solved_from_budget"].get<bool>());
  EXPECT_NEAR(j["pump_powers_w"]["p1"].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(j["pump_powers_w"]["p2"].get<double>(), 0.1, 1e-12);
  EXPECT_EQ(j["couplings"].size(), 4u);
}

TEST(CmdFiber, InfeasibleBudgetIsDomainError) {
  const CommandOutcome out = cmd_fiber(kConfigDir / "infeasible_budget.json");
  EXPECT_EQ(out.exit_code, kDomainError);
  EXPECT_FALSE(out.diagnostic.empty());
}

TEST(CmdFiber, MissingFileIsIoError) {
  EXPECT_EQ(cmd_fiber(kConfigDir / "does_not_exist.json").exit_code, kIoError);
}

TEST(CmdFiber, ConfigWithoutFiberIsDomainError) {
  TempDir dir;
  write_text_file(dir.path() / "c.json", R"({"dim": 2})");
  EXPECT_EQ(cmd_fiber(dir.path() / "c.json").exit_code, kDomainError);
}

// ---------------------------------------------------------------------------
// bases

TEST(CmdBases, QuquartPhiRows) {
  const Json j = payload_json(cmd_bases(4));
  const Json& phi = j["bases"]["phi"];
  ASSERT_EQ(phi.size(), 4u);
  // phi_4 = (i, -1, i, 1) / 2
  const Json& phi4 = phi[3]["amplitudes"];
  const char* expected[] = {"i/2", "-1/2", "i/2", "1/2"};
  for (int m = 0; m < 4; ++m) EXPECT_EQ(phi4[m]["exact"], expected[m]);
  EXPECT_NEAR(phi4[1]["re"].get<double>(), -0.5, 1e-12);
  EXPECT_NEAR(phi4[0]["im"].get<double>(), 0.5, 1e-12);
}

TEST(CmdBases, QubitOverlapsAreHalf) {
  const Json j = payload_json(cmd_bases(2));
  EXPECT_EQ(j["bases"]["phi"][0]["amplitudes"][1]["exact"], "i/sqrt(2)");
  for (const Json& row : j["overlaps"]) {
    for (const Json& v : row) EXPECT_NEAR(v.get<double>(), 0.5, 1e-12);
  }
  for (const Json& row : j["overlaps_exact"]) {
    for (const Json& v : row) EXPECT_EQ(v, "1/2");
  }
}

TEST(CmdBases, UnsupportedDimension) { EXPECT_EQ(cmd_bases(3).exit_code, kDomainError); }

// ---------------------------------------------------------------------------
// attack

TEST(CmdAttack, Examples) {
  EXPECT_EQ(payload_json(cmd_attack(4, "intercept-resend-psi", "all"))["error_rate"], "3/8");
  const Json phi = payload_json(cmd_attack(2, "intercept-resend-psi", "phi-only"));
  EXPECT_EQ(phi["error_rate"], "1/2");
  EXPECT_DOUBLE_EQ(phi["decimal"].get<double>(), 0.5);
  EXPECT_EQ(payload_json(cmd_attack(2, "none", "all"))["error_rate"], "0");
}

TEST(CmdAttack, Errors) {
  EXPECT_EQ(cmd_attack(2, "photon-splitting", "all").exit_code, kDomainError);
  EXPECT_EQ(cmd_attack(2, "none", "sometimes").exit_code, kDomainError);
  EXPECT_EQ(cmd_attack(3, "none", "all").exit_code, kDomainError);
}

// ---------------------------------------------------------------------------
// run

TEST(CmdRun, InterceptResendSummary) {
  const CommandOutcome out = cmd_run(request(2, "intercept-resend-psi"));
  ASSERT_EQ(out.exit_code, kSuccess) << out.diagnostic;
  EXPECT_NEAR(field(out.payload, "qber"), 0.25, 0.006);
  EXPECT_NE(out.payload.find("ci95=["), std::string::npos);
  EXPECT_DOUBLE_EQ(field(out.payload, "exact"), 0.25);
}

TEST(CmdRun, NoEveSummary) {
  const CommandOutcome out = cmd_run(request(2, "none"));
  ASSERT_EQ(out.exit_code, kSuccess);
  EXPECT_EQ(field(out.payload, "qber"), 0.0);
  EXPECT_EQ(field(out.payload, "errors"), 0.0);
}

TEST(CmdRun, ConfigFileWithOverrides) {
  SessionRequest r;
  r.config = kConfigDir / "qubit_session.json";
  r.rounds = 1000;
  r.dim = 4;
  const CommandOutcome out = cmd_run(r);
  ASSERT_EQ(out.exit_code, kSuccess) << out.diagnostic;
  EXPECT_NE(out.payload.find("dim=4"), std::string::npos);
  EXPECT_NE(out.payload.find("sent=1000"), std::string::npos);
  // The qubit config's fiber drives all four ququart couplings and stays matched.
  EXPECT_EQ(out.payload.find("warning"), std::string::npos);
}

TEST(CmdRun, WritesReportAndTranscript) {
  TempDir dir;
  SessionRequest r = request(4, "intercept-resend-random-basis", 500);
  r.out = dir.path() / "report.json";
  r.transcript = dir.path() / "t.jsonl";
  ASSERT_EQ(cmd_run(r).exit_code, kSuccess);
  const Json report = read_json_file(dir.path() / "report.json");
  EXPECT_EQ(report["counts"]["sent"], 500);
  EXPECT_EQ(report["config"]["eve"], "intercept-resend-random-basis");
  std::ifstream in(dir.path() / "t.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 500);
}

TEST(CmdRun, StdoutReportMode) {
  SessionRequest r = request(2, "none", 100);
  r.out = "-";
  const CommandOutcome out = cmd_run(r);
  ASSERT_EQ(out.exit_code, kSuccess);
  EXPECT_EQ(Json::parse(out.payload)["counts"]["sent"], 100);
  EXPECT_NE(out.diagnostic.find("qber="), std::string::npos);
}

TEST(CmdRun, PayloadIsDeterministicAcrossWorkers) {
  SessionRequest r = request(4, "intercept-resend-psi", 20000);
  r.workers = 1;
  const std::string a = cmd_run(r).payload;
  r.workers = 8;
  EXPECT_EQ(a, cmd_run(r).payload);
}

TEST(CmdRun, Errors) {
  EXPECT_EQ(cmd_run(request(3, "none", 10)).exit_code, kDomainError);
  EXPECT_EQ(cmd_run(request(2, "tap", 10)).exit_code, kDomainError);
  EXPECT_EQ(cmd_run(request(2, "none", 0)).exit_code, kDomainError);

  SessionRequest bad_out = request(2, "none", 10);
  bad_out.out = "/nonexistent-dir/fqkd/report.json";
  EXPECT_EQ(cmd_run(bad_out).exit_code, kIoError);

  SessionRequest bad_transcript = request(2, "none", 10);
  bad_transcript.transcript = "/nonexistent-dir/fqkd/t.jsonl";
  EXPECT_EQ(cmd_run(bad_transcript).exit_code, kIoError);

  SessionRequest missing = request(2, "none", 10);
  missing.config = kConfigDir / "does_not_exist.json";
  EXPECT_EQ(cmd_run(missing).exit_code, kIoError);

  TempDir dir;
  write_text_file(dir.path() / "bad.json", R"({"dim": 2, "rounds": "many"})");
  SessionRequest invalid = request(2, "none", 10);
  invalid.config = dir.path() / "bad.json";
  EXPECT_EQ(cmd_run(invalid).exit_code, kDomainError);

  SessionRequest zero_workers = request(2, "none", 10);
  zero_workers.workers = 0;
  EXPECT_EQ(cmd_run(zero_workers).exit_code, kDomainError);
}

// ---------------------------------------------------------------------------
// sweep

TEST(CmdSweep, TwoReports) {
  SweepRequest r{request(2, "none", 2000), "survival_probability", {1.0, 0.5}};
  r.session.out = "-";
  const CommandOutcome out = cmd_sweep(r);
  ASSERT_EQ(out.exit_code, kSuccess) << out.diagnostic;
  const Json j = Json::parse(out.payload);
  EXPECT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][1]["config"]["channel"]["survival_probability"], 0.5);
}

TEST(CmdSweep, Errors) {
  EXPECT_EQ(cmd_sweep({request(2, "none", 10), "colour", {1.0}}).exit_code, kDomainError);
  EXPECT_EQ(cmd_sweep({request(2, "none", 10), "survival_probability", {}}).exit_code,
            kDomainError);
}

// ---------------------------------------------------------------------------
// workers

TEST(ResolveWorkers, FlagThenEnvironmentThenDefault) {
  ::unsetenv(kWorkersEnv);
  EXPECT_EQ(resolve_workers(std::nullopt), 1u);
  EXPECT_EQ(resolve_workers(6u), 6u);
  ::setenv(kWorkersEnv, "3", 1);
  EXPECT_EQ(resolve_workers(std::nullopt), 3u);
  EXPECT_EQ(resolve_workers(2u), 2u);
  ::setenv(kWorkersEnv, "lots", 1);
  EXPECT_THROW(resolve_workers(std::nullopt), ConfigError);
  ::unsetenv(kWorkersEnv);
}
