#include <benchmark/benchmark.h>

#include "pfet/he/shadow_provider.hpp"
#include "pfet/market/engine.hpp"
#include "pfet/protocol/session.hpp"
#include "pfet/sim/bench.hpp"

namespace {

pfet::market::MarketScenario scenario_for(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto scenario = pfet::sim::generate_scenario({n, n}, pfet::sim::kDefaultBenchSeed);
  scenario.params.epsilon = 1e-300;
  return scenario;
}

void BM_PlaintextIteration(benchmark::State& state) {
  const auto scenario = scenario_for(state);
  auto market = pfet::market::initial_state(scenario);
  for (auto _ : state) {
    market = pfet::market::run_iteration(market, scenario).first;
    benchmark::DoNotOptimize(market);
  }
  state.SetComplexityN(state.range(0));
}

void BM_EncryptedIteration(benchmark::State& state) {
  const auto scenario = scenario_for(state);
  pfet::he::ShadowProvider provider;
  pfet::protocol::ProtocolSession session(scenario, provider);
  for (auto _ : state) {
    auto report = session.step();
    benchmark::DoNotOptimize(report);
  }
  state.SetComplexityN(state.range(0));
}

void BM_ShadowMultiply(benchmark::State& state) {
  pfet::he::ShadowProvider provider;
  const auto keys = provider.keygen();
  const auto a = provider.encrypt(keys.public_key, 3.25);
  const auto b = provider.encrypt(keys.public_key, -1.5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(provider.multiply(keys.eval_key, a, b));
  }
}

}  // namespace

BENCHMARK(BM_PlaintextIteration)->DenseRange(10, 50, 10)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_EncryptedIteration)->DenseRange(10, 50, 10)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_ShadowMultiply);

BENCHMARK_MAIN();
