#pragma once

// BB84 over frequency-coded photons for qubit (d = 2) and qu-quart (d = 4)
// alphabets: Alice, Bob, an intercept-resend eavesdropper, sifting, and the
// exact attack analysis.
//
// Symbol k is carried by mode k + 1 (w_s(k+1)). Phi preparation and phi
// measurement are each a half-translation, so a matched phi round applies a
// full translation and Bob's frequency is a fixed permutation of Alice's.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fqkd/exact.hpp"
#include "fqkd/quantum.hpp"

namespace fqkd {

class RandomStream;

struct Symbol {
  int value = 0;

  friend bool operator==(Symbol, Symbol) = default;
};

enum class EveStrategy {
  None,
  /// Measure the frequency, resend a photon at the measured frequency.
  InterceptResendPsi,
  /// Measure in a uniformly chosen basis, resend in that basis.
  InterceptResendRandomBasis,
};

std::string_view to_string(EveStrategy strategy);
/// Accepts "none", "intercept-resend-psi", "intercept-resend-random-basis".
std::optional<EveStrategy> parse_eve_strategy(std::string_view name);

struct ChannelModel {
  double survival_probability = 1.0;
  /// Probability that Bob's detectors click at a uniformly random frequency
  /// when the photon itself was lost.
  double dark_count_probability = 0.0;

  /// Throws DomainError unless both probabilities lie in [0, 1].
  void validate() const;
  bool ideal() const { return survival_probability == 1.0 && dark_count_probability == 0.0; }
};

/// Transcript of one protocol round.
struct PhotonRecord {
  std::uint64_t index = 0;
  Symbol alice_symbol;
  BasisKind alice_basis = BasisKind::Psi;
  bool eve_acted = false;
  std::optional<BasisKind> eve_basis;
  std::optional<int> eve_outcome;
  /// Bob registered no click.
  bool lost = false;
  /// Bob's click came from a dark count rather than the photon.
  bool dark_count = false;
  BasisKind bob_basis = BasisKind::Psi;
  std::optional<int> bob_outcome;
  std::optional<Symbol> bob_symbol;
  bool sifted = false;
  std::optional<bool> error;
};

struct ProtocolSettings {
  int dim = 2;
  EveStrategy eve = EveStrategy::None;
  ChannelModel channel;
  double alice_phi_probability = 0.5;
  double bob_phi_probability = 0.5;
};

/// Psi: |w_s(k+1)>. Phi: the half-translation of it.
FrequencyState alice_prepare(Symbol symbol, Basis basis);

struct EveIntercept {
  FrequencyState state;  // the photon forwarded to Bob
  std::optional<BasisKind> basis;
  std::optional<int> outcome;
};

EveIntercept eve_act(const FrequencyState& state, EveStrategy strategy, RandomStream& rng);

/// Mode index in [1, dim] registered by Bob's detectors.
int bob_measure(const FrequencyState& state, Basis basis, RandomStream& rng);

/// Symbol Alice must have sent for Bob to register `outcome` in `basis`.
Symbol decode(int outcome, Basis basis);

/// Fills sifted and error on every record.
std::vector<PhotonRecord> sift(std::vector<PhotonRecord> records);
void sift_record(PhotonRecord& record);

/// One complete round on the stream (seed, index), already sifted.
PhotonRecord simulate_round(const ProtocolSettings& settings, std::uint64_t seed,
                            std::uint64_t index);

enum class ErrorCondition {
  /// Every sifted round.
  AllSifted,
  /// Sifted rounds where both parties chose phi.
  PhiOnly,
};

std::string_view to_string(ErrorCondition condition);
/// Accepts "all" / "all-sifted" and "phi-only".
std::optional<ErrorCondition> parse_error_condition(std::string_view name);

/// Probability that a sifted round (under the condition) carries an error,
/// by exhaustive enumeration of bases, symbols, Eve's outcomes and Bob's
/// outcomes with exact Born weights. Throws DomainError if the condition
/// has zero probability.
Fraction exact_error_rate(int dim, EveStrategy strategy, ErrorCondition condition,
                          Fraction alice_phi_probability = Fraction(1, 2),
                          Fraction bob_phi_probability = Fraction(1, 2));

/// Same enumeration with real-valued basis probabilities; Born weights stay
/// exact until the final combination.
double exact_error_rate_value(int dim, EveStrategy strategy, ErrorCondition condition,
                              double alice_phi_probability, double bob_phi_probability);

}  // namespace fqkd
