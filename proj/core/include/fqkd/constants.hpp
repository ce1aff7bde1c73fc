#pragma once

#include <numbers>

namespace fqkd {

/// Tolerance for exact linear algebra: norms, unitarity, Hermiticity,
/// basis orthogonality and the pump-power solver postcondition.
inline constexpr double kExactTolerance = 1e-12;

/// Tolerance when comparing a closed form against an independent numerical
/// route (eigendecomposition of the 2x2 generator).
inline constexpr double kOracleTolerance = 1e-10;

/// Tolerance of the fixed-step classical propagator against the analytic
/// 4x4 evolution and for its power conservation.
inline constexpr double kPropagatorTolerance = 1e-8;

/// Residual phase mismatch (rad/m) above which a session configuration
/// gets a warning.
inline constexpr double kPhaseMatchWarning = 1e-9;

/// kappa * z at the half-translation length (phi-basis change).
inline constexpr double kHalfTranslationPhase = std::numbers::pi / 4.0;

/// kappa * z at the full frequency-translation length.
inline constexpr double kFullTranslationPhase = std::numbers::pi / 2.0;

/// Default classical propagator resolution: steps per translation length.
inline constexpr int kStepsPerTranslationLength = 200;

}  // namespace fqkd
