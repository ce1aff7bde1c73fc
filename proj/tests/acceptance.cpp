// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fqkd/constants.hpp"
#include "fqkd/exact.hpp"
#include "fqkd/fiber.hpp"
#include "fqkd/io.hpp"
#include "fqkd/protocol.hpp"
#include "fqkd/quantum.hpp"
#include "fqkd/random.hpp"
#include "fqkd/session.hpp"
#include "oracles.hpp"

using namespace fqkd;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double matrix_diff(const ComplexMatrix& a, const oracle::DenseMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

void exact_attack_rates() {
  struct Case {
    int dim;
    ErrorCondition condition;
    Fraction expected;
  };
  const Case cases[] = {
      {2, ErrorCondition::AllSifted, Fraction(1, 4)},
      {4, ErrorCondition::AllSifted, Fraction(3, 8)},
      {2, ErrorCondition::PhiOnly, Fraction(1, 2)},
      {4, ErrorCondition::PhiOnly, Fraction(3, 4)},
  };
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (const Case& c : cases) {
    const Fraction got = exact_error_rate(c.dim, EveStrategy::InterceptResendPsi, c.condition);
    pass = pass && got == c.expected;
    detail += fmt("d=%d %s=%s ", c.dim, std::string(to_string(c.condition)).c_str(),
                  got.to_string().c_str());
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  detail += fmt("(%.3f ms)", ms);
  report(1, "exact attack rates", pass && ms < 1000.0, detail);
}

void monte_carlo_agreement() {
  bool pass = true;
  std::string detail;
  for (int dim : {2, 4}) {
    const double p = exact_error_rate(dim, EveStrategy::InterceptResendPsi,
                                      ErrorCondition::AllSifted)
                         .to_double();
    const double stated = dim == 2 ? 0.006 : 0.009;
    double worst_sigma = 0.0, worst_abs = 0.0, slowest = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SessionConfig c;
      c.dim = dim;
      c.eve = EveStrategy::InterceptResendPsi;
      c.rounds = 100000;
      c.seed = seed;
      const SessionReport r = run_session(c, {.workers = 1});
      const double dev = std::abs(r.qber - p);
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(r.counts.sifted));
      worst_sigma = std::max(worst_sigma, dev / sigma);
      worst_abs = std::max(worst_abs, dev);
      slowest = std::max(slowest, r.elapsed_seconds);
      pass = pass && dev <= 4.0 * sigma && dev <= stated && r.elapsed_seconds < 5.0;
    }
    detail += fmt("d=%d max|dev|=%.5f (%.2f sigma, stated +-%.3f) slowest=%.3fs; ", dim,
                  worst_abs, worst_sigma, stated, slowest);
  }
  report(2, "Monte Carlo agreement, 10 seeds x 1e5 rounds", pass, detail);
}

void noiseless_correctness() {
  bool pass = true;
  std::string detail;
  for (int dim : {2, 4}) {
    SessionConfig c;
    c.dim = dim;
    c.rounds = 100000;
    c.seed = 1;
    std::uint64_t sifted = 0, faithful = 0;
    const SessionReport r = run_session(c, {}, [&](const PhotonRecord& rec) {
      if (!rec.sifted) return;
      ++sifted;
      if (rec.bob_symbol == rec.alice_symbol) ++faithful;
    });
    pass = pass && r.qber == 0.0 && r.counts.errors == 0 && sifted == faithful &&
           sifted == r.counts.sifted && sifted > 0;
    detail += fmt("d=%d qber=%g fidelity=%llu/%llu; ", dim, r.qber,
                  static_cast<unsigned long long>(faithful),
                  static_cast<unsigned long long>(sifted));
  }
  report(3, "noiseless correctness", pass, detail);
}

void basis_reproduction() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const std::vector<std::vector<Complex>> qubit = {{r2, kI * r2}, {kI * r2, r2}};
  const std::vector<std::vector<Complex>> ququart = {
      {0.5, 0.5 * kI, -0.5, 0.5 * kI},
      {0.5 * kI, 0.5, 0.5 * kI, -0.5},
      {-0.5, 0.5 * kI, 0.5, 0.5 * kI},
      {0.5 * kI, -0.5, 0.5 * kI, 0.5},
  };
  double worst = 0.0;
  for (int dim : {2, 4}) {
    const auto& expected = dim == 2 ? qubit : ququart;
    const std::vector<FrequencyState> phi = basis_states({BasisKind::Phi, dim});
    for (int k = 0; k < dim; ++k) {
      for (int m = 0; m < dim; ++m) {
        worst = std::max(worst, std::abs(phi[k].amplitude(m + 1) - expected[k][m]));
      }
    }
  }
  report(4, "phi basis vectors", worst <= 1e-12, fmt("max deviation %.2e", worst));
}

void physics_cross_check() {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> kappa_dist(1e-4, 5.0);
  std::uniform_real_distribution<double> span(0.0, 2.0);
  std::normal_distribution<double> normal;
  double worst_ode = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double kappa = kappa_dist(gen);
    const double z = span(gen) * translation_length(kappa);
    ComplexVector v(4);
    for (int m = 0; m < 4; ++m) v(m) = {normal(gen), normal(gen)};
    v /= v.norm();
    ClassicalEnvelope env;
    for (int m = 0; m < 4; ++m) env.amplitudes[m] = v(m);
    const ClassicalEnvelope out = propagate_classical(env, kappa, z);
    const ComplexVector q = ququart_unitary(kappa * z).entries() * v;
    for (int m = 0; m < 4; ++m) worst_ode = std::max(worst_ode, std::abs(out.amplitudes[m] - q(m)));
  }

  std::uniform_real_distribution<double> theta_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> ratio_dist(-3.0, 3.0);
  double worst_detuned = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = theta_dist(gen);
    double ratio = ratio_dist(gen);
    if (ratio == 0.0) ratio = 0.5;
    const double kappa = 1.3;
    const auto reference =
        oracle::exp_i_hz(oracle::qubit_generator(kappa, ratio * kappa), theta / kappa);
    worst_detuned =
        std::max(worst_detuned, matrix_diff(qubit_unitary(theta, ratio).entries(), reference));
  }
  report(5, "classical ODE vs unitary, detuned closed form vs oracle",
         worst_ode <= kPropagatorTolerance && worst_detuned <= kOracleTolerance,
         fmt("ODE max diff %.2e (<= 1e-8), detuned max diff %.2e (<= 1e-10)", worst_ode,
             worst_detuned));
}

void property_suites() {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> theta_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> ratio_dist(-3.0, 3.0);
  std::normal_distribution<double> normal;

  double unitarity = 0.0, norm = 0.0, period = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = theta_dist(gen);
    const UnitaryMatrix q2 = qubit_unitary(theta, ratio_dist(gen));
    const UnitaryMatrix q4 = ququart_unitary(theta);
    for (const UnitaryMatrix* u : {&q2, &q4}) {
      const ComplexMatrix id = ComplexMatrix::Identity(u->dim(), u->dim());
      unitarity = std::max(unitarity, (u->entries().adjoint() * u->entries() - id)
                                          .cwiseAbs()
                                          .maxCoeff());
      ComplexVector v(u->dim());
      for (int m = 0; m < u->dim(); ++m) v(m) = {normal(gen), normal(gen)};
      v /= v.norm();
      norm = std::max(norm, std::abs((u->entries() * v).norm() - 1.0));
    }
    period = std::max(period, (ququart_unitary(theta + kPi).entries() - q4.entries())
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  const ComplexMatrix minus_id = -ComplexMatrix::Identity(2, 2);
  const double qubit_pi = (qubit_unitary(kPi).entries() - minus_id).cwiseAbs().maxCoeff();

  double mub = 0.0;
  for (int dim : {2, 4}) {
    const auto psi = basis_states({BasisKind::Psi, dim});
    const auto phi = basis_states({BasisKind::Phi, dim});
    for (const auto& a : psi) {
      for (const auto& b : phi) {
        mub = std::max(mub, std::abs(overlap_probability(a, b) - 1.0 / dim));
      }
    }
  }

  // Argmax decode: the most likely outcome of a matched round decodes to the
  // sent symbol.
  bool round_trip = true;
  for (int dim : {2, 4}) {
    for (BasisKind kind : {BasisKind::Psi, BasisKind::Phi}) {
      const Basis basis{kind, dim};
      for (int s = 0; s < dim; ++s) {
        FrequencyState at_bob = alice_prepare(Symbol{s}, basis);
        if (kind == BasisKind::Phi) at_bob = evolve(at_bob, half_translation(dim));
        int best = 1;
        for (int m = 2; m <= dim; ++m) {
          if (at_bob.probability(m) > at_bob.probability(best)) best = m;
        }
        round_trip = round_trip && std::abs(at_bob.probability(best) - 1.0) < 1e-12 &&
                     decode(best, basis) == Symbol{s};
      }
    }
  }

  const bool pass = unitarity <= kExactTolerance && norm <= kExactTolerance &&
                    period <= kExactTolerance && qubit_pi <= kExactTolerance &&
                    mub <= kExactTolerance && round_trip;
  report(6, "property suites", pass,
         fmt("unitarity %.1e, norm %.1e, period %.1e, qubit(pi)+I %.1e, MUB %.1e, decode %s",
             unitarity, norm, period, qubit_pi, mub, round_trip ? "ok" : "broken"));
}

void fiber_formulas() {
  const double kappa = effective_nonlinearity(0.01, 0.1, 0.1);
  const bool kappa_ok = std::abs(kappa - 2.0 * 0.01 * std::sqrt(0.1 * 0.1)) < 1e-15 &&
                        std::abs(effective_nonlinearity(2.0, 0.2, 0.05) - 0.4) < 1e-12;
  const double lambda = translation_length(kappa);
  const bool lambda_ok = std::abs(lambda - kPi / (2.0 * kappa)) < 1e-9 &&
                         std::abs(translation_length(2.0) - kPi / 4.0) < 1e-15;
  const double delta = phase_mismatch(CouplingBetas{1.0, 1.3, 0.9, 1.0}, 1.0, 0.2, 0.1);
  const bool delta_ok = std::abs(delta - 0.15) < 1e-12;

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  std::uniform_real_distribution<double> spacing(0.05, 1.0);
  std::uniform_real_distribution<double> gamma_dist(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double dw = spacing(gen);
    const double ws1 = start(gen);
    const FrequencyGrid grid = FrequencyGrid::make(ws1, dw, ws1 + 4.0 * dw + spacing(gen));
    const DispersionProfile profile(start(gen),
                                    {coeff(gen), coeff(gen), coeff(gen), coeff(gen), coeff(gen)});
    const double gamma = gamma_dist(gen);
    const CouplingBetas b = coupling_betas(profile, grid, kQubitCoupling);
    const double linear = b.pump_b - b.pump_a + b.source - b.target;
    const PumpPair p = solve_pump_powers(profile, grid, gamma,
                                         2.0 * std::abs(linear) / gamma + 0.05, kQubitCoupling);
    worst = std::max(worst, std::abs(phase_mismatch(profile, grid, gamma,
                                                    {p.power_a, p.power_b, p.power_a},
                                                    kQubitCoupling)));
  }
  report(7, "fiber formulas", kappa_ok && lambda_ok && delta_ok && worst < 1e-12,
         fmt("kappa=%.6g rad/m, lambda_FT=%.6g m, delta=%.6g rad/m, solver max|delta|=%.2e",
             kappa, lambda, delta, worst));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const fs::path dir =
      fs::temp_directory_path() / ("fqkd_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  bool pass = true;
  std::string detail;
  for (int dim : {2, 4}) {
    SessionConfig c;
    c.dim = dim;
    c.eve = EveStrategy::InterceptResendRandomBasis;
    c.channel = {.survival_probability = 0.9, .dark_count_probability = 0.05};
    c.rounds = 100000;
    c.seed = 1;
    c.transcript_output = dir / "one.jsonl";
    SessionReport one = run_session(c, {.workers = 1});
    c.transcript_output = dir / "eight.jsonl";
    SessionReport eight = run_session(c, {.workers = 8});
    const std::string a = slurp(dir / "one.jsonl");
    const std::string b = slurp(dir / "eight.jsonl");
    one.config.transcript_output.reset();
    eight.config.transcript_output.reset();
    const bool same = !a.empty() && a == b &&
                      dump_canonical(to_json(one, false)) == dump_canonical(to_json(eight, false));
    pass = pass && same;
    detail += fmt("d=%d transcript %zu bytes %s; ", dim, a.size(), same ? "identical" : "DIFFER");
  }
  fs::remove_all(dir);
  report(8, "determinism across 1 and 8 workers", pass, detail);
}

}  // namespace

int main() {
  try {
    exact_attack_rates();
    monte_carlo_agreement();
    noiseless_correctness();
    basis_reproduction();
    physics_cross_check();
    property_suites();
    fiber_formulas();
    determinism();
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
