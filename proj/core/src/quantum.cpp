#include "fqkd/quantum.hpp"

#include <cmath>
#include <string>

#include "fqkd/constants.hpp"
#include "fqkd/error.hpp"
#include "fqkd/random.hpp"

namespace fqkd {
namespace {

constexpr Complex kI{0.0, 1.0};

// exp(i z [[delta, kappa], [kappa, -delta]]) from the products kz = kappa*z
// and dz = delta*z. The generator squares to Omega^2 I, which gives
// cos(Omega z) I + i sin(Omega z)/Omega H.
ComplexMatrix qubit_closed_form(double kz, double dz) {
  const double phase = std::hypot(kz, dz);
  const double c = std::cos(phase);
  const double sinc = phase == 0.0 ? 1.0 : std::sin(phase) / phase;
  ComplexMatrix u(2, 2);
  u(0, 0) = Complex{c, 0.0} + kI * (sinc * dz);
  u(1, 1) = Complex{c, 0.0} - kI * (sinc * dz);
  u(0, 1) = kI * (sinc * kz);
  u(1, 0) = u(0, 1);
  return u;
}

ComplexMatrix ququart_closed_form(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  const Complex diagonal{(c + 1.0) / 2.0, 0.0};
  const Complex neighbour = kI * (s / 2.0);
  const Complex opposite{(c - 1.0) / 2.0, 0.0};
  ComplexMatrix u(4, 4);
  for (int row = 0; row < 4; ++row) {
    u(row, row) = diagonal;
    u(row, (row + 1) % 4) = neighbour;
    u(row, (row + 3) % 4) = neighbour;
    u(row, (row + 2) % 4) = opposite;
  }
  return u;
}

void require_mode(int dim, int k) {
  if (k < 1 || k > dim) {
    throw ContractViolation("mode index " + std::to_string(k) + " outside [1, " +
                            std::to_string(dim) + "]");
  }
}

}  // namespace

bool is_supported_dim(int dim) { return dim == 2 || dim == 4; }

void require_supported_dim(int dim) {
  if (!is_supported_dim(dim)) {
    throw ContractViolation("unsupported dimension " + std::to_string(dim) +
                            " (expected 2 or 4)");
  }
}

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Psi ? "psi" : "phi";
}

// ---------------------------------------------------------------------------
// FrequencyState

FrequencyState FrequencyState::mode(int dim, int k) {
  require_supported_dim(dim);
  require_mode(dim, k);
  ComplexVector amplitudes = ComplexVector::Zero(dim);
  amplitudes(k - 1) = 1.0;
  return FrequencyState(std::move(amplitudes));
}

FrequencyState FrequencyState::from_amplitudes(ComplexVector amplitudes) {
  require_supported_dim(static_cast<int>(amplitudes.size()));
  const double norm = amplitudes.squaredNorm();
  if (!(std::abs(norm - 1.0) <= kExactTolerance)) {
    throw ContractViolation("state is not normalized: |a|^2 = " + std::to_string(norm));
  }
  return FrequencyState(std::move(amplitudes));
}

Complex FrequencyState::amplitude(int k) const {
  require_mode(dim(), k);
  return amplitudes_(k - 1);
}

double FrequencyState::probability(int k) const { return std::norm(amplitude(k)); }

double FrequencyState::norm_squared() const { return amplitudes_.squaredNorm(); }

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix entries) {
  if (entries.rows() != entries.cols()) {
    throw ContractViolation("unitary must be square");
  }
  require_supported_dim(static_cast<int>(entries.rows()));
  const ComplexMatrix defect =
      entries.adjoint() * entries - ComplexMatrix::Identity(entries.rows(), entries.cols());
  if (!(defect.cwiseAbs().maxCoeff() <= kExactTolerance)) {
    throw ContractViolation("matrix is not unitary within tolerance");
  }
  return UnitaryMatrix(std::move(entries));
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  require_supported_dim(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

ComplexVector UnitaryMatrix::column(int k) const {
  require_mode(dim(), k);
  return entries_.col(k - 1);
}

// ---------------------------------------------------------------------------
// HamiltonianMatrix

HamiltonianMatrix HamiltonianMatrix::qubit(double kappa, double delta) {
  ComplexMatrix h(2, 2);
  h << delta, kappa, kappa, -delta;
  return HamiltonianMatrix(std::move(h));
}

HamiltonianMatrix HamiltonianMatrix::ququart(double kappa) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  for (int m = 0; m < 4; ++m) {
    h(m, (m + 1) % 4) = kappa;
    h(m, (m + 3) % 4) = kappa;
  }
  return HamiltonianMatrix(std::move(h));
}

// ---------------------------------------------------------------------------
// Propagators

UnitaryMatrix qubit_unitary(double theta, double delta_ratio) {
  return UnitaryMatrix::from_matrix(qubit_closed_form(theta, delta_ratio * theta));
}

UnitaryMatrix ququart_unitary(double theta) {
  return UnitaryMatrix::from_matrix(ququart_closed_form(theta));
}

UnitaryMatrix translation_unitary(int dim, double theta) {
  require_supported_dim(dim);
  return dim == 2 ? qubit_unitary(theta) : ququart_unitary(theta);
}

const UnitaryMatrix& half_translation(int dim) {
  static const UnitaryMatrix qubit = qubit_unitary(kHalfTranslationPhase);
  static const UnitaryMatrix ququart = ququart_unitary(kHalfTranslationPhase);
  require_supported_dim(dim);
  return dim == 2 ? qubit : ququart;
}

UnitaryMatrix propagator(const HamiltonianMatrix& hamiltonian, double z) {
  const ComplexMatrix& h = hamiltonian.entries();
  const double kappa = h(0, 1).real();
  if (hamiltonian.dim() == 2) {
    return UnitaryMatrix::from_matrix(qubit_closed_form(kappa * z, h(0, 0).real() * z));
  }
  return ququart_unitary(kappa * z);
}

FrequencyState evolve(const FrequencyState& state, const UnitaryMatrix& u) {
  if (state.dim() != u.dim()) {
    throw ContractViolation("evolve: state dimension " + std::to_string(state.dim()) +
                            " does not match unitary dimension " + std::to_string(u.dim()));
  }
  return FrequencyState::from_amplitudes(u.entries() * state.amplitudes());
}

std::vector<FrequencyState> basis_states(Basis basis) {
  require_supported_dim(basis.dim);
  std::vector<FrequencyState> states;
  states.reserve(basis.dim);
  for (int k = 1; k <= basis.dim; ++k) {
    if (basis.kind == BasisKind::Psi) {
      states.push_back(FrequencyState::mode(basis.dim, k));
    } else {
      states.push_back(FrequencyState::from_amplitudes(half_translation(basis.dim).column(k)));
    }
  }
  return states;
}

double overlap_probability(const FrequencyState& a, const FrequencyState& b) {
  if (a.dim() != b.dim()) {
    throw ContractViolation("overlap: dimension mismatch");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

FrequencyMeasurement measure_frequency(const FrequencyState& state, RandomStream& rng) {
  const double u = rng.uniform();
  const int dim = state.dim();
  double cumulative = 0.0;
  int outcome = dim;
  for (int k = 1; k <= dim; ++k) {
    cumulative += std::norm(state.amplitudes()(k - 1));
    if (u < cumulative) {
      outcome = k;
      break;
    }
  }
  // Rounding can leave the cumulative sum a hair below 1; fall back to the
  // last mode with nonzero weight rather than a zero-probability one.
  if (outcome == dim) {
    while (outcome > 1 && std::norm(state.amplitudes()(outcome - 1)) == 0.0) {
      --outcome;
    }
  }
  return {outcome, FrequencyState::mode(dim, outcome)};
}

}  // namespace fqkd
