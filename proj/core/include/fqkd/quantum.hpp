#pragma once

// Single-photon frequency states and their evolution in a phase-matched
// frequency-translation fiber.
//
// Modes are numbered 1..dim and map to the signal frequencies w_s1..w_sd.
// A state |psi> = sum_k a_k |w_sk> evolves as d|psi>/dz = i H |psi>, so the
// propagator over a length z is U(z) = exp(i H z).

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fqkd {

class RandomStream;
class UnitaryMatrix;

using Complex = std::complex<double>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

/// Dimension of a supported alphabet: 2 (qubit) or 4 (qu-quart).
bool is_supported_dim(int dim);
void require_supported_dim(int dim);

enum class BasisKind { Psi, Phi };

std::string_view to_string(BasisKind kind);

/// Psi is the frequency eigenbasis; Phi is its image under the
/// half-translation (kappa * z = pi/4).
struct Basis {
  BasisKind kind = BasisKind::Psi;
  int dim = 2;
};

/// Normalized amplitude vector over dim signal-frequency modes.
class FrequencyState {
 public:
  /// |w_sk> for mode k in [1, dim].
  static FrequencyState mode(int dim, int k);

  /// Throws ContractViolation unless the vector has 2 or 4 entries and unit
  /// norm within kExactTolerance.
  static FrequencyState from_amplitudes(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  /// Amplitude of mode k (1-based).
  Complex amplitude(int k) const;
  /// Born probability |a_k|^2 of mode k (1-based).
  double probability(int k) const;
  double norm_squared() const;

 private:
  explicit FrequencyState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  ComplexVector amplitudes_;
};

class UnitaryMatrix {
 public:
  /// Throws ContractViolation unless the matrix is square of dimension 2 or
  /// 4 and U^dagger U = I within kExactTolerance.
  static UnitaryMatrix from_matrix(ComplexMatrix entries);
  static UnitaryMatrix identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Column k (1-based): the image of |w_sk>.
  ComplexVector column(int k) const;

 private:
  explicit UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}

  ComplexMatrix entries_;
};

/// The single-photon restriction of the translation Hamiltonian, in rad/m.
class HamiltonianMatrix {
 public:
  /// [[delta, kappa], [kappa, -delta]]
  static HamiltonianMatrix qubit(double kappa, double delta);
  /// kappa times the 4-ring adjacency matrix (w_s4 couples back to w_s1).
  static HamiltonianMatrix ququart(double kappa);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }

 private:
  explicit HamiltonianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}
  ComplexMatrix entries_;
};

/// exp(i H z) for the two-mode Hamiltonian, with theta = kappa * z and
/// delta_ratio = delta / kappa. Reduces to [[cos, i sin], [i sin, cos]] at
/// delta_ratio = 0.
UnitaryMatrix qubit_unitary(double theta, double delta_ratio = 0.0);

/// exp(i H z) for the phase-matched four-mode ring, theta = kappa * z.
UnitaryMatrix ququart_unitary(double theta);

/// Propagator of a phase-matched fiber of the given dimension at phase theta.
UnitaryMatrix translation_unitary(int dim, double theta);

/// Half-translation (theta = pi/4); cached per dimension.
const UnitaryMatrix& half_translation(int dim);

/// Propagator of an arbitrary supported Hamiltonian over length z (m).
/// Ququart Hamiltonians must be phase matched.
UnitaryMatrix propagator(const HamiltonianMatrix& hamiltonian, double z);

/// Applies u to the state. Throws ContractViolation on dimension mismatch.
FrequencyState evolve(const FrequencyState& state, const UnitaryMatrix& u);

/// Psi: the standard vectors. Phi: the columns of the half-translation.
std::vector<FrequencyState> basis_states(Basis basis);

/// |<a|b>|^2
double overlap_probability(const FrequencyState& a, const FrequencyState& b);

struct FrequencyMeasurement {
  int outcome;  // mode index in [1, dim]
  FrequencyState collapsed;
};

/// Born-rule frequency measurement. Consumes exactly one uniform draw.
FrequencyMeasurement measure_frequency(const FrequencyState& state, RandomStream& rng);

}  // namespace fqkd
