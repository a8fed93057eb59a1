#include <benchmark/benchmark.h>

#include "pald/event.hpp"
#include "pald/rng.hpp"
#include "pald/uncertain.hpp"

namespace {

pald::event::ValueList random_values(std::size_t count, std::uint64_t seed) {
    pald::rng::Stream stream(pald::rng::stream_key(seed));
    pald::event::ValueList out;
    for (std::size_t i = 0; i < count; ++i) out.push_back({stream.next_double(), 1.0});
    return out;
}

void BM_EventTripletExact(benchmark::State& state) {
    const std::size_t per_list = state.range(0);
    const auto xy = random_values(per_list, 1);
    const auto xz = random_values(per_list, 2);
    const auto yz = random_values(per_list, 3);
    for (auto _ : state) {
        auto p = pald::event::event_triplet(xy, xz, yz);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_EventTripletExact)->Arg(4)->Arg(16)->Arg(64);

void BM_EventTripletMonteCarlo(benchmark::State& state) {
    const auto xy = random_values(4, 1);
    const auto xz = random_values(4, 2);
    const auto yz = random_values(4, 3);
    pald::event::EventOptions opts;
    opts.exact_limit = 0;
    opts.seed = 9;
    opts.mc_samples = state.range(0);
    for (auto _ : state) {
        auto p = pald::event::event_triplet(xy, xz, yz, opts);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_EventTripletMonteCarlo)->Arg(10000)->Arg(100000);

// A triple that cannot be short-circuited, so the quadrature runs in full.
void BM_UncertainTripletQuadrature(benchmark::State& state) {
    const pald::uncertain::UncertainPoints1D pts{{0.0, 1.0, 1.6}, 0.25};
    for (auto _ : state) {
        auto p = pald::uncertain::uncertain_triplet_1d(pts, 0, 1, 2);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_UncertainTripletQuadrature);

void BM_UncertainTripletShortCircuit(benchmark::State& state) {
    const pald::uncertain::UncertainPoints1D pts{{0.0, 1.0, 50.0}, 0.1};
    for (auto _ : state) {
        auto p = pald::uncertain::uncertain_triplet_1d(pts, 0, 1, 2);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_UncertainTripletShortCircuit);

}  // namespace
