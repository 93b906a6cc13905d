#include "nlipm/dual_fista.hpp"
#include "nlipm/knn_graph.hpp"
#include "nlipm/one_laplacian.hpp"
#include "nlipm/threshold.hpp"
#include "nlipm/two_moons.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace nlipm;

graph::SparseGraph moons_graph(std::size_t n) {
    graph::TwoMoonsSpec spec;
    spec.n = n;
    spec.seed = 11;
    return graph::build_knn_graph(graph::generate_two_moons(spec).points, 10);
}

// One cold inner solve at the first iterate of a random start.
void BM_FistaInner(benchmark::State& state) {
    const auto g = moons_graph(static_cast<std::size_t>(state.range(0)));
    const Vector f = onelap::random_initialization(g.vertex_count(), 3);
    const double lambda = onelap::f1(g, f);
    const Vector v = onelap::balanced_sign(f);
    onelap::FistaOptions opts;
    opts.tol = 1e-8 * lambda;
    opts.maxIters = 10000;
    std::size_t iters = 0;
    for (auto _ : state) {
        const auto sol = onelap::fista_inner(g, lambda, v, onelap::DualEdgeState{}, opts);
        iters = sol.iterations;
        benchmark::DoNotOptimize(sol.u.data());
    }
    state.counters["iterations"] = static_cast<double>(iters);
}
BENCHMARK(BM_FistaInner)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_OptimalThreshold(benchmark::State& state) {
    const auto g = moons_graph(static_cast<std::size_t>(state.range(0)));
    const Vector f = onelap::random_initialization(g.vertex_count(), 5);
    for (auto _ : state) benchmark::DoNotOptimize(onelap::optimal_threshold(g, f));
}
BENCHMARK(BM_OptimalThreshold)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_IpmSpectralStart(benchmark::State& state) {
    const auto g = moons_graph(static_cast<std::size_t>(state.range(0)));
    const Vector f0 = onelap::spectral_initialization(g);
    const IpmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(onelap::ipm_one_laplacian(g, f0, cfg));
}
BENCHMARK(BM_IpmSpectralStart)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
