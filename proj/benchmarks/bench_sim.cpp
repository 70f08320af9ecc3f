#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "normsim/normsim.hpp"

using namespace normsim;

namespace {

World grown_world(Condition condition, int agents, RandomStream& rng) {
    SimConfig c;
    c.condition = condition;
    c.initial_agents = agents;
    c.initial_resource = 1e12;
    return init_world(c, rng);
}

void BM_StepRound(benchmark::State& state) {
    const auto condition = state.range(1) ? Condition::Probabilistic : Condition::Deterministic;
    SimConfig c;
    c.condition = condition;
    c.max_rounds = 1 << 30;
    c.reproduction_threshold = 1e9;  // keep the population fixed
    RandomStream rng(1);
    World w = grown_world(condition, static_cast<int>(state.range(0)), rng);
    for (auto _ : state) {
        for (auto& a : w.agents) a.energy = 10.0;
        w.resource = 1e12;
        benchmark::DoNotOptimize(step_round(w, c, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepRound)->ArgsProduct({{100, 1000, 5000}, {0, 1}});

void BM_MutateGenome(benchmark::State& state) {
    MutationParams p;
    p.op = state.range(0) ? MutationOperator::LegacySetToOne : MutationOperator::Gaussian;
    RandomStream rng(2);
    Genome g;
    g.bite_size = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(g = mutate_genome(g, p, rng));
}
BENCHMARK(BM_MutateGenome)->Arg(0)->Arg(1);

void BM_Shuffle(benchmark::State& state) {
    std::vector<std::size_t> order(static_cast<std::size_t>(state.range(0)));
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream rng(3);
    for (auto _ : state) {
        rng.shuffle(std::span<std::size_t>(order));
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Shuffle)->Arg(100)->Arg(5000);

void BM_RunSimulation(benchmark::State& state) {
    SimConfig c;
    c.condition = state.range(0) ? Condition::Probabilistic : Condition::Deterministic;
    c.max_rounds = 200;
    c.seed = 9;
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(c));
}
BENCHMARK(BM_RunSimulation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
