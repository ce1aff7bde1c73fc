#include "fqkd/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fqkd/constants.hpp"
#include "fqkd/error.hpp"

namespace fqkd {
namespace {

using Complex = std::complex<double>;

// Frequencies are compared relative to the largest one on the grid; THz-scale
// values in rad/s carry ~0.1 rad/s of rounding.
double frequency_tolerance(const std::array<double, 4>& signals,
                           const std::array<double, 3>& pumps) {
  double scale = 0.0;
  for (double w : signals) scale = std::max(scale, std::abs(w));
  for (double w : pumps) scale = std::max(scale, std::abs(w));
  return 1e-9 * std::max(scale, 1.0);
}

void require_index(int value, int upper, const char* what) {
  if (value < 1 || value > upper) {
    throw ContractViolation(std::string(what) + " index " + std::to_string(value) +
                            " outside [1, " + std::to_string(upper) + "]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FrequencyGrid

FrequencyGrid::FrequencyGrid(std::array<double, 4> signals, std::array<double, 3> pumps)
    : signals_(signals),
      pumps_(pumps),
      spacing_(signals[1] - signals[0]),
      center_((signals[0] + signals[1] + signals[2] + signals[3]) / 4.0) {}

FrequencyGrid FrequencyGrid::make(double signal_start, double spacing, double pump1) {
  const double pump2 = pump1 + spacing;
  return from_values(
      {signal_start, signal_start + spacing, signal_start + 2.0 * spacing,
       signal_start + 3.0 * spacing},
      {pump1, pump2, pump2 + 3.0 * spacing});
}

FrequencyGrid FrequencyGrid::from_values(std::array<double, 4> signals,
                                         std::array<double, 3> pumps) {
  for (double w : signals) {
    if (!std::isfinite(w)) throw DomainError("signal frequency must be finite");
  }
  for (double w : pumps) {
    if (!std::isfinite(w)) throw DomainError("pump frequency must be finite");
  }
  const double spacing = signals[1] - signals[0];
  if (!(spacing > 0.0)) {
    throw DomainError("signal frequencies must be strictly ascending");
  }
  const double tol = frequency_tolerance(signals, pumps);
  for (int k = 1; k < 3; ++k) {
    if (std::abs(signals[k + 1] - signals[k] - spacing) > tol) {
      throw DomainError("signal frequencies must be equally spaced");
    }
  }
  if (std::abs(pumps[1] - pumps[0] - spacing) > tol) {
    throw DomainError("pump 2 must sit one grid spacing above pump 1");
  }
  if (std::abs(pumps[2] - pumps[1] - 3.0 * spacing) > tol) {
    throw DomainError("pump 3 must sit three grid spacings above pump 2");
  }
  for (double w : pumps) {
    if (w >= signals[0] && w <= signals[3]) {
      throw DomainError("pump frequencies must lie outside the signal band");
    }
  }
  return FrequencyGrid(signals, pumps);
}

double FrequencyGrid::signal(int k) const {
  require_index(k, 4, "signal");
  return signals_[k - 1];
}

double FrequencyGrid::pump(int n) const {
  require_index(n, 3, "pump");
  return pumps_[n - 1];
}

// ---------------------------------------------------------------------------
// DispersionProfile

DispersionProfile::DispersionProfile(double reference_frequency, std::vector<double> coefficients)
    : reference_(reference_frequency), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw DomainError("dispersion profile needs at least beta0");
  }
  if (!std::isfinite(reference_) ||
      !std::all_of(coefficients_.begin(), coefficients_.end(),
                   [](double c) { return std::isfinite(c); })) {
    throw DomainError("dispersion profile coefficients must be finite");
  }
}

DispersionProfile DispersionProfile::flat(double beta0) { return DispersionProfile(0.0, {beta0}); }

double DispersionProfile::beta(double omega) const {
  // Horner on beta_n / n!.
  const double x = omega - reference_;
  double value = 0.0;
  for (std::size_t n = coefficients_.size(); n-- > 0;) {
    value = value * x / static_cast<double>(n + 1) + coefficients_[n];
  }
  return value;
}

// ---------------------------------------------------------------------------
// Formulas

double PumpPowers::operator[](int n) const {
  require_index(n, 3, "pump");
  return n == 1 ? p1 : (n == 2 ? p2 : p3);
}

double effective_nonlinearity(double gamma, double p1, double p2) {
  if (!(gamma > 0.0)) {
    throw DomainError("nonlinear coefficient gamma must be positive");
  }
  if (!(p1 >= 0.0) || !(p2 >= 0.0)) {
    throw DomainError("pump powers must be non-negative");
  }
  return 2.0 * gamma * std::sqrt(p1 * p2);
}

double translation_length(double kappa) {
  if (!(kappa > 0.0)) {
    throw DomainError("no frequency translation without a positive effective nonlinearity");
  }
  return std::numbers::pi / (2.0 * kappa);
}

double phase_mismatch(const CouplingBetas& betas, double gamma, double power_a, double power_b) {
  return (betas.pump_b - betas.pump_a + betas.source - betas.target +
          gamma * (power_a - power_b)) /
         2.0;
}

CouplingBetas coupling_betas(const DispersionProfile& profile, const FrequencyGrid& grid,
                             Coupling coupling) {
  const double w_source = grid.signal(coupling.source);
  const double w_target = grid.signal(coupling.target);
  const double w_a = grid.pump(coupling.pump_a);
  const double w_b = grid.pump(coupling.pump_b);
  const double tol = frequency_tolerance(grid.signals(), grid.pumps());
  if (coupling.source == coupling.target ||
      std::abs((w_target - w_source) - (w_b - w_a)) > tol) {
    throw DomainError("coupling s" + std::to_string(coupling.source) + "->s" +
                      std::to_string(coupling.target) + " via pumps (" +
                      std::to_string(coupling.pump_a) + ", " + std::to_string(coupling.pump_b) +
                      ") does not conserve energy on this grid");
  }
  return {profile.beta(w_a), profile.beta(w_b), profile.beta(w_source), profile.beta(w_target)};
}

double phase_mismatch(const DispersionProfile& profile, const FrequencyGrid& grid, double gamma,
                      const PumpPowers& powers, Coupling coupling) {
  const CouplingBetas betas = coupling_betas(profile, grid, coupling);
  return phase_mismatch(betas, gamma, powers[coupling.pump_a], powers[coupling.pump_b]);
}

PumpPair solve_pump_powers(const DispersionProfile& profile, const FrequencyGrid& grid,
                           double gamma, double total_power, Coupling coupling) {
  if (!(total_power > 0.0)) {
    throw DomainError("pump power budget must be positive");
  }
  if (!(gamma > 0.0)) {
    throw DomainError("nonlinear coefficient gamma must be positive");
  }
  const CouplingBetas b = coupling_betas(profile, grid, coupling);
  const double linear_mismatch = b.pump_b - b.pump_a + b.source - b.target;
  const double power_a = (total_power - linear_mismatch / gamma) / 2.0;
  const double power_b = total_power - power_a;
  if (!(power_a > 0.0) || !(power_b > 0.0)) {
    throw InfeasibleError("phase matching needs pump powers (" + std::to_string(power_a) + ", " +
                          std::to_string(power_b) + ") W: linear mismatch " +
                          std::to_string(linear_mismatch) + " rad/m exceeds the " +
                          std::to_string(total_power) + " W budget");
  }
  return {power_a, power_b};
}

FiberParams make_fiber_params(double gamma, const PumpPowers& pumps,
                              const DispersionProfile& profile, const FrequencyGrid& grid) {
  if (!(pumps.p3 >= 0.0)) {
    throw DomainError("pump powers must be non-negative");
  }
  FiberParams params;
  params.gamma = gamma;
  params.pumps = pumps;
  params.kappa = effective_nonlinearity(gamma, pumps.p1, pumps.p2);
  params.lambda_ft = translation_length(params.kappa);
  params.delta = phase_mismatch(profile, grid, gamma, pumps, kQubitCoupling);
  return params;
}

// ---------------------------------------------------------------------------
// Classical propagation

double ClassicalEnvelope::power() const {
  double total = 0.0;
  for (const Complex& a : amplitudes) total += std::norm(a);
  return total;
}

namespace {

using Envelope = std::array<Complex, 4>;

// dA_m/dz = i kappa (A_(m-1) + A_(m+1))
Envelope coupled_mode_rhs(const Envelope& a, double kappa) {
  const Complex ik{0.0, kappa};
  Envelope d;
  for (int m = 0; m < 4; ++m) {
    d[m] = ik * (a[(m + 3) % 4] + a[(m + 1) % 4]);
  }
  return d;
}

Envelope axpy(const Envelope& a, const Envelope& k, double h) {
  Envelope out;
  for (int m = 0; m < 4; ++m) out[m] = a[m] + h * k[m];
  return out;
}

}  // namespace

ClassicalEnvelope propagate_classical(const ClassicalEnvelope& envelope, double kappa, double z,
                                      int step_count) {
  if (step_count < 1) {
    throw ContractViolation("propagate_classical: step_count must be at least 1");
  }
  if (!(kappa >= 0.0)) {
    throw DomainError("propagate_classical: kappa must be non-negative");
  }
  const double h = z / static_cast<double>(step_count);
  Envelope a = envelope.amplitudes;
  for (int step = 0; step < step_count; ++step) {
    const Envelope k1 = coupled_mode_rhs(a, kappa);
    const Envelope k2 = coupled_mode_rhs(axpy(a, k1, h / 2.0), kappa);
    const Envelope k3 = coupled_mode_rhs(axpy(a, k2, h / 2.0), kappa);
    const Envelope k4 = coupled_mode_rhs(axpy(a, k3, h), kappa);
    for (int m = 0; m < 4; ++m) {
      a[m] += (h / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
    }
  }
  return ClassicalEnvelope{a};
}

ClassicalEnvelope propagate_classical(const ClassicalEnvelope& envelope, double kappa, double z) {
  int steps = 1;
  if (kappa > 0.0) {
    const double max_step = translation_length(kappa) / kStepsPerTranslationLength;
    steps = std::max(1, static_cast<int>(std::ceil(std::abs(z) / max_step)));
  }
  return propagate_classical(envelope, kappa, z, steps);
}

}  // namespace fqkd
