#include "nlipm/errors.hpp"
#include "nlipm/one_laplacian.hpp"
#include "nlipm/oracles/oracles.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace nlipm;
using namespace nlipm::onelap;
using nlipm::testing::random_vector;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Vector indicator(const std::vector<bool>& inSet) {
    Vector f = Vector::Zero(static_cast<Eigen::Index>(inSet.size()));
    for (std::size_t i = 0; i < inSet.size(); ++i)
        if (inSet[i]) f[static_cast<Eigen::Index>(i)] = 1.0;
    return f;
}

}  // namespace

TEST(F1, PathIndicator) {
    EXPECT_DOUBLE_EQ(f1(nlipm::testing::path_graph(4), vec({1, 1, 0, 0})), 0.5);
}

TEST(F1, ConstantIsZero) {
    EXPECT_EQ(f1(nlipm::testing::two_triangles(), Vector::Constant(6, 2.5)), 0.0);
}

TEST(F1, ZeroVectorIsDomainError) {
    EXPECT_THROW(f1(nlipm::testing::path_graph(3), Vector::Zero(3)), DomainError);
}

TEST(F1, MatchesDenseDoubleSum) {
    std::mt19937_64 rng(1);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = oracles::random_connected_graph(5 + seed % 20, 0.3, seed);
        const Vector f = random_vector(rng, static_cast<Eigen::Index>(g.vertex_count()));
        EXPECT_NEAR(f1(g, f), oracles::dense_f1(oracles::dense_weights(g), f), 1e-12);
    }
}

TEST(BalancedSign, Examples) {
    EXPECT_EQ(balanced_sign(vec({1, -1, 0})), vec({1, -1, 0}));
    EXPECT_EQ(balanced_sign(vec({3, 1, 0, -2})), vec({1, 1, -1, -1}));
    EXPECT_EQ(balanced_sign(vec({5, 0, 0, -1})), vec({1, 0, 0, -1}));
}

TEST(BalancedSign, UnbalancedWithoutZeroIsContractViolation) {
    EXPECT_THROW(balanced_sign(vec({1, 2, -1})), ContractViolation);
    EXPECT_EQ(balanced_sign(vec({1, -2})), vec({1, -1}));
}

TEST(BalancedSign, ZeroSumAndSubgradientOnMedianZeroVectors) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index n = 2 + trial % 40;
        const Vector f = median_zero_shift(random_vector(rng, n));
        const Vector v = balanced_sign(f);
        EXPECT_LE(std::abs(v.sum()), 1e-12 * static_cast<double>(n));
        EXPECT_LE(v.cwiseAbs().maxCoeff(), 1.0);
        EXPECT_NEAR(v.dot(f), f.lpNorm<1>(), 1e-12);
    }
}

TEST(MedianZeroShift, Examples) {
    EXPECT_EQ(median_zero_shift(vec({3, 1, 2})), vec({1, -1, 0}));
    EXPECT_EQ(median_zero_shift(vec({1, 2, 3, 4})), vec({-1, 0, 1, 2}));
    EXPECT_EQ(median_zero_shift(vec({0, 0, 0, 5})), vec({0, 0, 0, 5}));
}

TEST(MedianZeroShift, AtLeastOneZeroAndBalancedSides) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index n = 1 + trial % 30;
        const Vector f = median_zero_shift(random_vector(rng, n));
        EXPECT_GE((f.array() == 0.0).count(), 1);
        EXPECT_LE(2 * (f.array() > 0.0).count(), n);
        EXPECT_LE(2 * (f.array() < 0.0).count(), n);
    }
}

TEST(IndicatorIdentity, F1OfScaledIndicatorIsRcc) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> scale(0.01, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial) % 20;
        const auto g = oracles::random_connected_graph(n, 0.3, static_cast<std::uint64_t>(trial));
        std::vector<bool> c(n, false);
        const std::size_t size = 1 + rng() % (n / 2);
        for (std::size_t k = 0; k < size; ++k) c[k] = true;
        std::shuffle(c.begin(), c.end(), rng);
        ASSERT_NEAR(f1(g, scale(rng) * indicator(c)), graph::rcc(g, c), 1e-12);
    }
}

TEST(ThresholdDecrease, F1NeverBelowSmallerThresholdSide) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial) % 25;
        const auto g = oracles::random_connected_graph(n, 0.3, 1000 + static_cast<std::uint64_t>(trial));
        const Vector f = median_zero_shift(random_vector(rng, static_cast<Eigen::Index>(n)));
        const Threshold th = optimal_threshold(g, f);
        std::vector<bool> smaller = th.inSet;
        if (2 * th.size > n) smaller.flip();
        ASSERT_GE(f1(g, f), f1(g, indicator(smaller)) - 1e-12);
    }
}

TEST(IpmOneLaplacian, TwoTrianglesReachesCheegerConstant) {
    const auto g = nlipm::testing::two_triangles(0.1);
    const auto r = ipm_one_laplacian(g, vec({1, 1, 1, 0, 0, 0}), IpmConfig{});
    const double h = oracles::brute_force_hrcc(g).value;
    EXPECT_NEAR(h, 0.1 / 3.0, 1e-15);
    EXPECT_TRUE(r.eigen.terminated);
    EXPECT_NEAR(r.eigen.eigenvalue, h, 1e-12);
    EXPECT_NEAR(r.bestThreshold.value, h, 1e-12);
    EXPECT_LE(r.eigen.residual, 1e-6);
}

TEST(IpmOneLaplacian, RandomStartOnTwoTriangles) {
    const auto g = nlipm::testing::two_triangles(0.1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = ipm_one_laplacian(g, random_initialization(6, seed), IpmConfig{});
        EXPECT_LE(r.eigen.eigenvalue, r.eigen.objectiveTrace.front());
        EXPECT_GE(r.eigen.eigenvalue, 0.1 / 3.0 - 1e-10);
    }
}

TEST(IpmOneLaplacian, DisconnectedGraphIsRejected) {
    const graph::SparseGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    EXPECT_THROW(ipm_one_laplacian(g, vec({1, 0, 0, -1}), IpmConfig{}), DisconnectedGraph);
}

TEST(IpmOneLaplacian, ConstantStartIsDomainError) {
    EXPECT_THROW(ipm_one_laplacian(nlipm::testing::path_graph(4), Vector::Ones(4), IpmConfig{}), DomainError);
}

TEST(IpmOneLaplacian, EveryIterateMedianZeroNonconstantWithBalancedSigns) {
    std::size_t runs = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 3 + seed % 28;
        const auto g = oracles::random_connected_graph(n, 0.25, 5000 + seed);
        InnerOptions opts;
        opts.observer = [&](const OneLapState& s) {
            ASSERT_EQ(lower_median(s.f), 0.0);
            ASSERT_GT(s.f.maxCoeff(), s.f.minCoeff());
            ASSERT_NEAR(s.f.lpNorm<1>(), 1.0, 1e-12);
            ASSERT_LE(std::abs(s.v.sum()), 1e-12 * static_cast<double>(n));
            ASSERT_LE(2 * (s.f.array() > 0.0).count(), static_cast<Eigen::Index>(n));
            ASSERT_LE(2 * (s.f.array() < 0.0).count(), static_cast<Eigen::Index>(n));
        };
        const auto r = ipm_one_laplacian(g, random_initialization(n, seed), IpmConfig{}, opts);
        const auto& trace = r.eigen.objectiveTrace;
        for (std::size_t k = 1; k < trace.size(); ++k) ASSERT_LT(trace[k], trace[k - 1]);
        ++runs;
    }
    EXPECT_EQ(runs, 200u);
}

TEST(IpmOneLaplacian, EigenvalueSandwichOnSmallGraphs) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 4 + seed % 9;
        const auto g = oracles::random_connected_graph(n, 0.3, 7000 + seed);
        const Vector f0 = random_initialization(n, seed);
        const auto r = ipm_one_laplacian(g, f0, IpmConfig{});
        const double h = oracles::brute_force_hrcc(g).value;
        EXPECT_GE(r.eigen.eigenvalue, h - 1e-10);
        EXPECT_LE(r.eigen.eigenvalue, f1(g, f0) + 1e-10);
    }
}

TEST(IpmOneLaplacian, SpectralStartNeverWorseThanSpectralThreshold) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 6 + seed % 50;
        const auto g = oracles::random_connected_graph(n, 0.15, 9000 + seed);
        Threshold spectral;
        const Vector f0 = spectral_initialization(g, &spectral);
        const auto r = ipm_one_laplacian(g, f0, IpmConfig{});
        EXPECT_LE(r.bestThreshold.value, spectral.value);
        EXPECT_LE(r.finalThreshold.value, spectral.value);
    }
}

TEST(IpmOneLaplacian, DescentStepsFollowNegativeInnerObjective) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto g = oracles::random_connected_graph(20, 0.2, 300 + seed);
        const auto r = ipm_one_laplacian(g, random_initialization(20, seed), IpmConfig{});
        const auto& trace = r.eigen.objectiveTrace;
        ASSERT_EQ(trace.size(), r.eigen.iterations + 1);
        for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
            EXPECT_LT(r.innerSolves[k].primal, 0.0);
            EXPECT_LT(trace[k + 1], trace[k]);
        }
    }
}

TEST(Certify, ExplicitDualOnTwoTriangles) {
    const auto g = nlipm::testing::two_triangles(0.1);
    const double lambda = 0.1 / 3.0;
    const Vector f = vec({1, 1, 1, 0, 0, 0}) / 3.0;
    DualEdgeState dual = DualEdgeState::zeros(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges()[e];
        double a = 0.0;
        if (ed.i == 2 && ed.j == 3) a = 1.0;
        if ((ed.i == 0 && ed.j == 2) || (ed.i == 1 && ed.j == 2)) a = lambda;
        if ((ed.i == 3 && ed.j == 4) || (ed.i == 3 && ed.j == 5)) a = lambda;
        dual.alpha[static_cast<Eigen::Index>(e)] = a;
    }
    EXPECT_LE(certify_eigenvector(g, f, lambda, dual), 1e-8);
}

TEST(Certify, ConstantVectorCannotBeCertified) {
    const auto g = nlipm::testing::two_triangles(0.1);
    std::mt19937_64 rng(6);
    for (double lambda : {0.05, 0.5, 2.0}) {
        DualEdgeState dual = DualEdgeState::zeros(g.edge_count());
        for (auto& a : dual.alpha) a = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        EXPECT_GE(certify_eigenvector(g, Vector::Ones(6), lambda, dual), lambda);
    }
}

TEST(Certify, RandomNonEigenvectorsHaveLargeResidual) {
    std::mt19937_64 rng(7);
    double floor = 1e300;
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracles::random_connected_graph(12, 0.3, 400 + static_cast<std::uint64_t>(trial));
        const Vector f = median_zero_shift(random_vector(rng, 12));
        const double lambda = f1(g, f);
        // Best dual available for this point: solve the inner dual accurately.
        FistaOptions opts;
        opts.tol = 1e-12;
        opts.maxIters = 100000;
        const auto sol = fista_inner(g, lambda, balanced_sign(f), DualEdgeState::zeros(g.edge_count()), opts);
        const double r = certify_eigenvector(g, f, lambda, sol.dual);
        floor = std::min(floor, r);
        EXPECT_GT(r, 1e-3);
    }
    RecordProperty("observed_floor", std::to_string(floor));
}

TEST(Restarts, BestRunIsMinimumAndDeterministic) {
    const auto g = oracles::random_connected_graph(25, 0.2, 77);
    IpmConfig cfg;
    cfg.restarts = 4;
    cfg.seed = 3;
    const auto a = ipm_one_laplacian_restarts(g, cfg);
    const auto b = ipm_one_laplacian_restarts(g, cfg);
    ASSERT_EQ(a.runs.size(), 5u);
    EXPECT_TRUE(a.runs.back().spectral);
    for (const auto& run : a.runs) EXPECT_GE(run.result.bestThreshold.value, a.runs[a.best].result.bestThreshold.value);
    for (std::size_t r = 0; r < a.runs.size(); ++r) {
        EXPECT_EQ(a.runs[r].result.eigen.vector, b.runs[r].result.eigen.vector);
        EXPECT_EQ(a.runs[r].seed, b.runs[r].seed);
    }
    EXPECT_LE(a.runs.back().result.bestThreshold.value, a.spectralThreshold.value);
}

TEST(Restarts, AddingRestartsKeepsEarlierStreams) {
    const auto g = oracles::random_connected_graph(20, 0.2, 78);
    IpmConfig cfg;
    cfg.restarts = 2;
    const auto small = ipm_one_laplacian_restarts(g, cfg, false);
    cfg.restarts = 4;
    const auto large = ipm_one_laplacian_restarts(g, cfg, false);
    for (std::size_t r = 0; r < 2; ++r)
        EXPECT_EQ(small.runs[r].result.eigen.vector, large.runs[r].result.eigen.vector);
}
