#include "nlipm/knn_graph.hpp"
#include "nlipm/spectral.hpp"
#include "nlipm/two_moons.hpp"

#include <benchmark/benchmark.h>

namespace {

nlipm::graph::TwoMoons moons(std::size_t n) {
    nlipm::graph::TwoMoonsSpec spec;
    spec.n = n;
    spec.seed = 7;
    return nlipm::graph::generate_two_moons(spec);
}

void BM_KnnGraph(benchmark::State& state) {
    const auto data = moons(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(nlipm::graph::build_knn_graph(data.points, 10));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KnnGraph)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

// Sizes on both sides of the dense solver limit.
void BM_SecondEigenvector(benchmark::State& state) {
    const auto g = nlipm::graph::build_knn_graph(moons(static_cast<std::size_t>(state.range(0))).points, 10);
    for (auto _ : state) benchmark::DoNotOptimize(nlipm::graph::spectral_second_eigenvector(g));
}
BENCHMARK(BM_SecondEigenvector)->Arg(200)->Arg(400)->Arg(800)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
