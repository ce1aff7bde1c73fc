#pragma once

// Design parameters of the frequency-translation stage: effective
// nonlinearity, phase mismatch, translation length, phase-matching pump
// powers, plus a classical coupled-mode propagator that serves as an
// independent check on the quantum evolution.
//
// Units: angular frequencies in rad/s, propagation constants in rad/m,
// powers in W, gamma in 1/(W m), lengths in m.

#include <array>
#include <complex>
#include <vector>

namespace fqkd {

/// Four equally spaced signal frequencies and three pumps placed so that
/// (p1, p2) couple nearest signal neighbours and (p2, p3) couple w_s1 with
/// w_s4.
class FrequencyGrid {
 public:
  /// w_s1 = signal_start, w_s(k+1) = w_sk + spacing, w_p2 = w_p1 + spacing,
  /// w_p3 = w_p2 + 3 spacing.
  static FrequencyGrid make(double signal_start, double spacing, double pump1);

  /// Validates an explicit grid. Throws DomainError on any violated
  /// invariant (spacing, pump offsets, pumps inside the signal band).
  static FrequencyGrid from_values(std::array<double, 4> signals, std::array<double, 3> pumps);

  /// Signal frequency of mode k in [1, 4].
  double signal(int k) const;
  /// Pump frequency n in [1, 3].
  double pump(int n) const;
  const std::array<double, 4>& signals() const { return signals_; }
  const std::array<double, 3>& pumps() const { return pumps_; }
  double spacing() const { return spacing_; }
  /// Mean signal frequency w0.
  double center() const { return center_; }

 private:
  FrequencyGrid(std::array<double, 4> signals, std::array<double, 3> pumps);

  std::array<double, 4> signals_;
  std::array<double, 3> pumps_;
  double spacing_;
  double center_;
};

/// beta(w) = sum_n beta_n (w - w_ref)^n / n!  (Taylor expansion about w_ref).
class DispersionProfile {
 public:
  DispersionProfile(double reference_frequency, std::vector<double> coefficients);
  static DispersionProfile flat(double beta0);

  double beta(double omega) const;
  double reference_frequency() const { return reference_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  double reference_;
  std::vector<double> coefficients_;
};

struct PumpPowers {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  /// Power of pump n in [1, 3].
  double operator[](int n) const;
};

/// A translation process: the photon moves source -> target while pump_a
/// gains the energy pump_b loses (w_target - w_source = w_pb - w_pa).
struct Coupling {
  int source;  // signal mode, 1-based
  int target;  // signal mode, 1-based
  int pump_a;  // pump index, 1-based
  int pump_b;  // pump index, 1-based
};

/// w_s1 -> w_s2 via (p1, p2).
inline constexpr Coupling kQubitCoupling{1, 2, 1, 2};

/// The four phase-matched ring couplings of the qu-quart region.
inline constexpr std::array<Coupling, 4> kQuquartCouplings{{
    {1, 2, 1, 2},
    {2, 3, 1, 2},
    {3, 4, 1, 2},
    {1, 4, 2, 3},
}};

/// Propagation constants of the four frequencies taking part in a coupling.
struct CouplingBetas {
  double pump_a;
  double pump_b;
  double source;
  double target;
};

struct FiberParams {
  double gamma = 0.0;
  PumpPowers pumps;
  double kappa = 0.0;      // rad/m
  double delta = 0.0;      // rad/m, of the w_s1 -> w_s2 coupling
  double lambda_ft = 0.0;  // m
};

/// kappa = 2 gamma sqrt(p1 p2). Throws DomainError for gamma <= 0 or a
/// negative power.
double effective_nonlinearity(double gamma, double p1, double p2);

/// lambda_FT = pi / (2 kappa). Throws DomainError for kappa <= 0.
double translation_length(double kappa);

/// delta = (beta_pb - beta_pa + beta_source - beta_target + gamma (P_a - P_b)) / 2
double phase_mismatch(const CouplingBetas& betas, double gamma, double power_a, double power_b);

/// Evaluates the betas from the profile on the grid. Throws DomainError when
/// the coupling does not conserve energy on the grid.
double phase_mismatch(const DispersionProfile& profile, const FrequencyGrid& grid, double gamma,
                      const PumpPowers& powers, Coupling coupling);

CouplingBetas coupling_betas(const DispersionProfile& profile, const FrequencyGrid& grid,
                             Coupling coupling);

struct PumpPair {
  double power_a;
  double power_b;
};

/// Splits total_power between pump_a and pump_b so that the coupling is
/// phase matched. Throws DomainError for total_power <= 0 and
/// InfeasibleError when either pump would need non-positive power.
PumpPair solve_pump_powers(const DispersionProfile& profile, const FrequencyGrid& grid,
                           double gamma, double total_power, Coupling coupling);

/// kappa, lambda_FT and the w_s1 -> w_s2 mismatch for the given pumps.
FiberParams make_fiber_params(double gamma, const PumpPowers& pumps,
                              const DispersionProfile& profile, const FrequencyGrid& grid);

/// Complex signal envelopes A_s1..A_s4 in sqrt(W).
struct ClassicalEnvelope {
  std::array<std::complex<double>, 4> amplitudes{};

  double power() const;
};

/// Integrates i dA_m/dz = -kappa (A_(m-1) + A_(m+1)) (ring indexing) over
/// [0, z] with step_count classic fourth-order Runge-Kutta steps.
ClassicalEnvelope propagate_classical(const ClassicalEnvelope& envelope, double kappa, double z,
                                      int step_count);

/// Same, at the default resolution of lambda_FT / 200 per step.
ClassicalEnvelope propagate_classical(const ClassicalEnvelope& envelope, double kappa, double z);

}  // namespace fqkd
