#include <benchmark/benchmark.h>

#include "fqkd/fiber.hpp"
#include "fqkd/protocol.hpp"
#include "fqkd/quantum.hpp"
#include "fqkd/random.hpp"

namespace {

void BM_PhiloxBlock(benchmark::State& state) {
  fqkd::RandomStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_PhiloxBlock);

void BM_QuquartUnitary(benchmark::State& state) {
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fqkd::ququart_unitary(theta));
    theta += 1e-3;
  }
}
BENCHMARK(BM_QuquartUnitary);

void BM_EvolveHalfTranslation(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const fqkd::FrequencyState s = fqkd::FrequencyState::mode(dim, 1);
  const fqkd::UnitaryMatrix& u = fqkd::half_translation(dim);
  for (auto _ : state) benchmark::DoNotOptimize(fqkd::evolve(s, u));
}
BENCHMARK(BM_EvolveHalfTranslation)->Arg(2)->Arg(4);

void BM_ExactErrorRate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fqkd::exact_error_rate(4, fqkd::EveStrategy::InterceptResendPsi,
                                                    fqkd::ErrorCondition::AllSifted));
  }
}
BENCHMARK(BM_ExactErrorRate);

void BM_PropagateClassical(benchmark::State& state) {
  const fqkd::ClassicalEnvelope in{{1.0, 0.0, 0.0, 0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fqkd::propagate_classical(in, 2.0, fqkd::translation_length(2.0)));
  }
}
BENCHMARK(BM_PropagateClassical);

}  // namespace
