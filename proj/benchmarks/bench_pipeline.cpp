#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "grabin/synthesis.hpp"

using namespace grabin;

namespace {

const std::filesystem::path kCorpus = GRABIN_CORPUS_DIR;

// n request/grant pairs with GF r_i -> GF g_i and mutual exclusion of the grants.
SpecProblem arbiter(unsigned n)
{
    SpecProblem p;
    for (unsigned i = 0; i < n; ++i) {
        p.inputs.push_back("r" + std::to_string(i));
        p.outputs.push_back("g" + std::to_string(i));
        p.assumptions.push_back({ConjunctSource::Kind::Ltl, "GF r" + std::to_string(i)});
        p.guarantees.push_back({ConjunctSource::Kind::Ltl, "GF g" + std::to_string(i)});
        for (unsigned j = 0; j < i; ++j)
            p.guarantees.push_back(
                {ConjunctSource::Kind::Ltl, "G !(g" + std::to_string(i) + " & g" + std::to_string(j) + ")"});
    }
    return p;
}

SynthesisGame random_game(unsigned env_vertices, unsigned seed)
{
    std::mt19937 rng(seed);
    std::vector<unsigned> colours(env_vertices);
    for (auto& c : colours)
        c = rng() % 5;
    std::vector<std::uint32_t> moves(std::size_t{env_vertices} * 16);
    for (auto& m : moves)
        m = rng() % env_vertices;
    return SynthesisGame(2, 2, colours, moves);
}

void BM_BuildProduct(benchmark::State& state)
{
    const auto spec = normalize_spec(arbiter(static_cast<unsigned>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_product(spec).num_states());
    state.counters["states"] = build_product(spec).num_states();
}
BENCHMARK(BM_BuildProduct)->DenseRange(1, 3);

void BM_Zielonka(benchmark::State& state)
{
    const auto game = random_game(static_cast<unsigned>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_zielonka(game).system_wins.size());
}
BENCHMARK(BM_Zielonka)->RangeMultiplier(4)->Range(64, 4096);

void BM_ProgressMeasures(benchmark::State& state)
{
    const auto game = random_game(static_cast<unsigned>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_progress_measures(game).size());
}
BENCHMARK(BM_ProgressMeasures)->RangeMultiplier(4)->Range(64, 4096);

void BM_SynthesizeCorpus(benchmark::State& state)
{
    const auto spec = load_spec_file(kCorpus / "robust_mutex.json");
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize(spec).realizable());
}
BENCHMARK(BM_SynthesizeCorpus);

void BM_SynthesizeArbiter(benchmark::State& state)
{
    const auto spec = arbiter(static_cast<unsigned>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(synthesize(spec).realizable());
}
BENCHMARK(BM_SynthesizeArbiter)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
