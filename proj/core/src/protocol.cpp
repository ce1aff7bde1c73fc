#include "fqkd/protocol.hpp"

#include <string>
#include <type_traits>
#include <utility>

#include "fqkd/error.hpp"
#include "fqkd/random.hpp"

namespace fqkd {

std::string_view to_string(EveStrategy strategy) {
  switch (strategy) {
    case EveStrategy::None:
      return "none";
    case EveStrategy::InterceptResendPsi:
      return "intercept-resend-psi";
    case EveStrategy::InterceptResendRandomBasis:
      return "intercept-resend-random-basis";
  }
  return "unknown";
}

std::optional<EveStrategy> parse_eve_strategy(std::string_view name) {
  for (EveStrategy s : {EveStrategy::None, EveStrategy::InterceptResendPsi,
                        EveStrategy::InterceptResendRandomBasis}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

std::string_view to_string(ErrorCondition condition) {
  return condition == ErrorCondition::AllSifted ? "all" : "phi-only";
}

std::optional<ErrorCondition> parse_error_condition(std::string_view name) {
  if (name == "all" || name == "all-sifted") return ErrorCondition::AllSifted;
  if (name == "phi-only") return ErrorCondition::PhiOnly;
  return std::nullopt;
}

void ChannelModel::validate() const {
  if (!(survival_probability >= 0.0 && survival_probability <= 1.0)) {
    throw DomainError("survival_probability must lie in [0, 1]");
  }
  if (!(dark_count_probability >= 0.0 && dark_count_probability <= 1.0)) {
    throw DomainError("dark_count_probability must lie in [0, 1]");
  }
}

// ---------------------------------------------------------------------------
// Parties

FrequencyState alice_prepare(Symbol symbol, Basis basis) {
  require_supported_dim(basis.dim);
  if (symbol.value < 0 || symbol.value >= basis.dim) {
    throw ContractViolation("symbol " + std::to_string(symbol.value) + " outside [0, " +
                            std::to_string(basis.dim - 1) + "]");
  }
  FrequencyState state = FrequencyState::mode(basis.dim, symbol.value + 1);
  if (basis.kind == BasisKind::Phi) {
    state = evolve(state, half_translation(basis.dim));
  }
  return state;
}

EveIntercept eve_act(const FrequencyState& state, EveStrategy strategy, RandomStream& rng) {
  switch (strategy) {
    case EveStrategy::None:
      return {state, std::nullopt, std::nullopt};
    case EveStrategy::InterceptResendPsi: {
      FrequencyMeasurement m = measure_frequency(state, rng);
      return {std::move(m.collapsed), BasisKind::Psi, m.outcome};
    }
    case EveStrategy::InterceptResendRandomBasis: {
      const Basis basis{rng.bernoulli(0.5) ? BasisKind::Phi : BasisKind::Psi, state.dim()};
      const int outcome = bob_measure(state, basis, rng);
      return {alice_prepare(decode(outcome, basis), basis), basis.kind, outcome};
    }
  }
  throw ContractViolation("unknown eavesdropping strategy");
}

int bob_measure(const FrequencyState& state, Basis basis, RandomStream& rng) {
  if (state.dim() != basis.dim) {
    throw ContractViolation("bob_measure: dimension mismatch");
  }
  if (basis.kind == BasisKind::Psi) {
    return measure_frequency(state, rng).outcome;
  }
  return measure_frequency(evolve(state, half_translation(basis.dim)), rng).outcome;
}

Symbol decode(int outcome, Basis basis) {
  require_supported_dim(basis.dim);
  if (outcome < 1 || outcome > basis.dim) {
    throw ContractViolation("outcome " + std::to_string(outcome) + " outside [1, " +
                            std::to_string(basis.dim) + "]");
  }
  if (basis.kind == BasisKind::Psi) {
    return Symbol{outcome - 1};
  }
  // A full translation moves mode m to mode m + d/2 (mod d).
  return Symbol{(outcome - 1 + basis.dim / 2) % basis.dim};
}

// ---------------------------------------------------------------------------
// Sifting and rounds

void sift_record(PhotonRecord& record) {
  record.sifted =
      !record.lost && record.alice_basis == record.bob_basis && record.bob_symbol.has_value();
  if (record.sifted) {
    record.error = *record.bob_symbol != record.alice_symbol;
  } else {
    record.error.reset();
  }
}

std::vector<PhotonRecord> sift(std::vector<PhotonRecord> records) {
  for (PhotonRecord& r : records) sift_record(r);
  return records;
}

PhotonRecord simulate_round(const ProtocolSettings& settings, std::uint64_t seed,
                            std::uint64_t index) {
  const int dim = settings.dim;
  RandomStream rng(seed, index);
  PhotonRecord record;
  record.index = index;

  record.alice_basis =
      rng.bernoulli(settings.alice_phi_probability) ? BasisKind::Phi : BasisKind::Psi;
  record.alice_symbol = Symbol{static_cast<int>(rng.uniform_index(dim))};
  FrequencyState photon = alice_prepare(record.alice_symbol, {record.alice_basis, dim});

  if (settings.eve != EveStrategy::None) {
    EveIntercept intercept = eve_act(photon, settings.eve, rng);
    record.eve_acted = true;
    record.eve_basis = intercept.basis;
    record.eve_outcome = intercept.outcome;
    photon = std::move(intercept.state);
  }

  const bool arrived = rng.bernoulli(settings.channel.survival_probability);
  record.bob_basis = rng.bernoulli(settings.bob_phi_probability) ? BasisKind::Phi : BasisKind::Psi;
  const Basis bob_basis{record.bob_basis, dim};
  if (arrived) {
    record.bob_outcome = bob_measure(photon, bob_basis, rng);
  } else if (rng.bernoulli(settings.channel.dark_count_probability)) {
    record.dark_count = true;
    record.bob_outcome = static_cast<int>(rng.uniform_index(dim)) + 1;
  }
  record.lost = !record.bob_outcome.has_value();
  if (record.bob_outcome) {
    record.bob_symbol = decode(*record.bob_outcome, bob_basis);
  }
  sift_record(record);
  return record;
}

// ---------------------------------------------------------------------------
// Exact attack analysis

namespace {

ExactState exact_prepare(Symbol symbol, Basis basis) {
  ExactState state = ExactState::mode(basis.dim, symbol.value + 1);
  if (basis.kind == BasisKind::Phi) {
    state = ExactHalfTranslation::get(basis.dim).apply(state);
  }
  return state;
}

template <typename Weight>
Weight as_weight(const Fraction& f) {
  if constexpr (std::is_same_v<Weight, Fraction>) {
    return f;
  } else {
    return f.to_double();
  }
}

struct Forwarded {
  Fraction weight;
  ExactState state;
};

// Photons Eve forwards, each with the exact probability of that branch.
std::vector<Forwarded> exact_eve_branches(const ExactState& sent, EveStrategy strategy) {
  const int dim = sent.dim;
  std::vector<Forwarded> branches;
  auto measure_in = [&](BasisKind kind, Fraction basis_weight) {
    const ExactState measured =
        kind == BasisKind::Psi ? sent : ExactHalfTranslation::get(dim).apply(sent);
    for (int k = 1; k <= dim; ++k) {
      const Fraction p = measured.probability(k);
      if (p == Fraction(0)) continue;
      const Basis basis{kind, dim};
      branches.push_back({basis_weight * p, exact_prepare(decode(k, basis), basis)});
    }
  };
  switch (strategy) {
    case EveStrategy::None:
      branches.push_back({Fraction(1), sent});
      break;
    case EveStrategy::InterceptResendPsi:
      measure_in(BasisKind::Psi, Fraction(1));
      break;
    case EveStrategy::InterceptResendRandomBasis:
      measure_in(BasisKind::Psi, Fraction(1, 2));
      measure_in(BasisKind::Phi, Fraction(1, 2));
      break;
  }
  return branches;
}

template <typename Weight>
Weight enumerate_error_rate(int dim, EveStrategy strategy, ErrorCondition condition,
                            Weight alice_phi, Weight bob_phi) {
  require_supported_dim(dim);
  const Weight one(1);
  const Weight symbol_weight = one / Weight(dim);
  Weight sifted(0);
  Weight errors(0);

  for (BasisKind alice_basis : {BasisKind::Psi, BasisKind::Phi}) {
    const Weight alice_weight = alice_basis == BasisKind::Phi ? alice_phi : one - alice_phi;
    for (int s = 0; s < dim; ++s) {
      const Symbol symbol{s};
      const ExactState sent = exact_prepare(symbol, {alice_basis, dim});
      const std::vector<Forwarded> branches = exact_eve_branches(sent, strategy);
      for (BasisKind bob_basis : {BasisKind::Psi, BasisKind::Phi}) {
        const Weight bob_weight = bob_basis == BasisKind::Phi ? bob_phi : one - bob_phi;
        if (bob_basis != alice_basis) continue;
        if (condition == ErrorCondition::PhiOnly && bob_basis != BasisKind::Phi) continue;
        const Basis basis{bob_basis, dim};
        for (const Forwarded& branch : branches) {
          const ExactState received = bob_basis == BasisKind::Psi
                                          ? branch.state
                                          : ExactHalfTranslation::get(dim).apply(branch.state);
          for (int outcome = 1; outcome <= dim; ++outcome) {
            const Fraction born = received.probability(outcome);
            if (born == Fraction(0)) continue;
            const Weight w = alice_weight * symbol_weight * bob_weight *
                             as_weight<Weight>(branch.weight * born);
            sifted += w;
            if (decode(outcome, basis) != symbol) errors += w;
          }
        }
      }
    }
  }
  if (sifted == Weight(0)) {
    throw DomainError("no sifted rounds under the requested condition and basis probabilities");
  }
  return errors / sifted;
}

}  // namespace

Fraction exact_error_rate(int dim, EveStrategy strategy, ErrorCondition condition,
                          Fraction alice_phi_probability, Fraction bob_phi_probability) {
  if (alice_phi_probability < Fraction(0) || alice_phi_probability > Fraction(1) ||
      bob_phi_probability < Fraction(0) || bob_phi_probability > Fraction(1)) {
    throw DomainError("basis probabilities must lie in [0, 1]");
  }
  return enumerate_error_rate<Fraction>(dim, strategy, condition, alice_phi_probability,
                                        bob_phi_probability);
}

double exact_error_rate_value(int dim, EveStrategy strategy, ErrorCondition condition,
                              double alice_phi_probability, double bob_phi_probability) {
  if (!(alice_phi_probability >= 0.0 && alice_phi_probability <= 1.0) ||
      !(bob_phi_probability >= 0.0 && bob_phi_probability <= 1.0)) {
    throw DomainError("basis probabilities must lie in [0, 1]");
  }
  return enumerate_error_rate<double>(dim, strategy, condition, alice_phi_probability,
                                      bob_phi_probability);
}

}  // namespace fqkd
