#include "nlipm/sparse_pca.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace nlipm;

// A planted sparse direction on a few features plus isotropic noise.
Matrix planted(Eigen::Index n, Eigen::Index p) {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> normal;
    Matrix x(n, p);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = 3.0 * normal(rng);
        for (Eigen::Index j = 0; j < std::min<Eigen::Index>(10, p); ++j) x(i, j) += s;
    }
    return x;
}

void BM_SparsePca(benchmark::State& state) {
    const spca::DataMatrix X(planted(200, state.range(0)));
    IpmConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(spca::ipm_sparse_pca(X, 0.5, cfg));
}
BENCHMARK(BM_SparsePca)->Arg(50)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TradeoffSweep(benchmark::State& state) {
    const spca::DataMatrix X(planted(100, 200));
    std::vector<double> alphas;
    for (int k = 0; k <= 10; ++k) alphas.push_back(0.1 * k);
    IpmConfig cfg;
    cfg.restarts = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spca::tradeoff_sweep(X, alphas, cfg));
}
BENCHMARK(BM_TradeoffSweep)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
