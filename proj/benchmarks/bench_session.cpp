#include <benchmark/benchmark.h>

#include "fqkd/protocol.hpp"
#include "fqkd/session.hpp"

namespace {

void BM_SimulateRound(benchmark::State& state) {
  const fqkd::ProtocolSettings settings{.dim = static_cast<int>(state.range(0)),
                                        .eve = fqkd::EveStrategy::InterceptResendPsi};
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fqkd::simulate_round(settings, 1, index++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulateRound)->Arg(2)->Arg(4);

// 1e5-round session; the second argument is the worker count.
void BM_Session(benchmark::State& state) {
  fqkd::SessionConfig config;
  config.dim = static_cast<int>(state.range(0));
  config.eve = fqkd::EveStrategy::InterceptResendPsi;
  config.rounds = 100000;
  const fqkd::RunOptions options{.workers = static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(fqkd::run_session(config, options));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.rounds));
}
BENCHMARK(BM_Session)->Args({2, 1})->Args({4, 1})->Args({4, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace
