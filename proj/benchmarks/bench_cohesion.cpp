#include <benchmark/benchmark.h>

#include <vector>

#include "pald/classical.hpp"
#include "pald/core.hpp"
#include "pald/rng.hpp"

namespace {

pald::DissimilarityMatrix random_line(pald::Index n) {
    pald::rng::Stream stream(pald::rng::stream_key(42, n));
    std::vector<double> pts(n);
    for (double& p : pts) p = 100.0 * stream.next_double();
    return pald::classical::distances_from_values_1d(pts);
}

void BM_DenseKernel(benchmark::State& state) {
    const pald::Index n = state.range(0);
    const auto d = random_line(n);
    const auto r = pald::classical::relevance_from_distances(d);
    const auto q = pald::classical::support_from_distances(d);
    for (auto _ : state) {
        auto c = pald::cohesion(r, q, {1, false, 1e-9});
        benchmark::DoNotOptimize(c);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_DenseKernel)->RangeMultiplier(2)->Range(32, 256)->Complexity();

void BM_StreamingClassical(benchmark::State& state) {
    const pald::Index n = state.range(0);
    const auto d = random_line(n);
    for (auto _ : state) {
        auto c = pald::classical::classical_cohesion(d, {0, true, 1e-9}, 0);  // force lazy
        benchmark::DoNotOptimize(c);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_StreamingClassical)->RangeMultiplier(2)->Range(128, 512)->Complexity();

void BM_IndicatorBuild(benchmark::State& state) {
    const pald::Index n = state.range(0);
    const auto d = random_line(n);
    for (auto _ : state) {
        auto r = pald::classical::relevance_from_distances(d);
        auto q = pald::classical::support_from_distances(d);
        benchmark::DoNotOptimize(r);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_IndicatorBuild)->Arg(128)->Arg(256);

}  // namespace
