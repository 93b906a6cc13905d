#include "nlipm/errors.hpp"
#include "nlipm/oracles/oracles.hpp"
#include "nlipm/sparse_pca.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nlipm;
using namespace nlipm::spca;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p) {
    std::normal_distribution<double> normal;
    Matrix x(n, p);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
    return x;
}

// Centered data whose covariance X^T X is diag(3, 1) times n.
DataMatrix diagonal_data() {
    Matrix x(4, 2);
    x << 1, 1, -1, 1, 1, -1, -1, -1;
    x.col(0) *= std::sqrt(3.0);
    return DataMatrix(x);
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST(DataMatrix, CentersColumnsAndDropsConstantOnes) {
    std::mt19937_64 rng(1);
    Matrix x = random_matrix(rng, 10, 4).array() + 5.0;
    x.col(2).setConstant(7.0);
    const DataMatrix d(x);
    EXPECT_EQ(d.cols(), 3);
    EXPECT_EQ(d.dropped_columns(), std::vector<std::size_t>{2});
    EXPECT_EQ(d.original_index(2), 3u);
    EXPECT_LE(d.X().colwise().mean().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DataMatrix, TopEigenvalueFromSmallerGram) {
    std::mt19937_64 rng(2);
    for (auto [n, p] : {std::pair{5, 12}, std::pair{12, 5}}) {
        const DataMatrix d(random_matrix(rng, n, p));
        const double expected = oracles::dense_eigen(d.X().transpose() * d.X()).values.maxCoeff();
        EXPECT_NEAR(d.top_eigenvalue(), expected, 1e-10 * expected);
    }
}

TEST(SpcaFunctional, AlphaZeroIsTwoNormRatio) {
    std::mt19937_64 rng(3);
    const DataMatrix d(random_matrix(rng, 8, 4));
    const Vector f = nlipm::testing::random_vector(rng, 4);
    EXPECT_NEAR(spca_functional(d, f, 0.0), f.norm() / (d.X() * f).norm(), 1e-14);
}

TEST(SpcaFunctional, IdentityDataIsOne) {
    // Centered columns of a scaled Helmert basis are orthonormal.
    Matrix x(3, 2);
    x << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
    const DataMatrix d(x);
    std::mt19937_64 rng(4);
    EXPECT_NEAR(spca_functional(d, nlipm::testing::random_vector(rng, 2), 0.0), 1.0, 1e-12);
}

TEST(SpcaFunctional, MatchesDenseCovariance) {
    std::mt19937_64 rng(5);
    const DataMatrix d(random_matrix(rng, 9, 5));
    const Matrix sigma = d.X().transpose() * d.X();
    for (int trial = 0; trial < 20; ++trial) {
        const Vector f = nlipm::testing::random_vector(rng, 5);
        const double expected = (0.5 * f.norm() + 0.5 * f.lpNorm<1>()) / std::sqrt(f.dot(sigma * f));
        EXPECT_NEAR(spca_functional(d, f, 0.5), expected, 1e-12 * expected);
    }
}

TEST(SpcaFunctional, NullSpaceIsDomainError) {
    Matrix x(2, 3);
    x << 1, 1, 1, -1, -1, -1;
    const DataMatrix d(x);
    EXPECT_THROW(spca_functional(d, vec({1, -1, 0}), 0.3), DomainError);
}

TEST(ClosedForm, Examples) {
    EXPECT_EQ(spca_inner_closed_form(vec({0.5, -0.2}), 1.0, 0.3), vec({0.5 - 0.3, 0.0}));
    std::mt19937_64 rng(6);
    const Vector mu = nlipm::testing::random_vector(rng, 6);
    EXPECT_LE((spca_inner_closed_form(mu, 2.5, 0.0) - 2.5 * mu).norm(), 1e-15);
    bool zero = false;
    EXPECT_EQ(spca_inner_closed_form(vec({0.1, -0.1}), 1.0, 0.5, &zero), Vector::Zero(2));
    EXPECT_TRUE(zero);
    EXPECT_THROW(spca_inner_closed_form(mu, 0.0, 0.5), DomainError);
    EXPECT_THROW(spca_inner_closed_form(mu, 1.0, 1.5), DomainError);
}

TEST(ClosedForm, SupportShrinksAsAlphaGrows) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector mu = nlipm::testing::random_vector(rng, 10);
        const double lambda = std::uniform_real_distribution<double>(0.1, 3.0)(rng);
        Vector previous = spca_inner_closed_form(mu, lambda, 0.0);
        for (int k = 1; k <= 20; ++k) {
            const Vector g = spca_inner_closed_form(mu, lambda, k / 20.0);
            for (Eigen::Index i = 0; i < g.size(); ++i)
                if (g[i] != 0.0) ASSERT_NE(previous[i], 0.0);
            previous = g;
        }
    }
}

TEST(ClosedForm, DirectionMatchesSubgradientOracle) {
    std::mt19937_64 rng(8);
    int checked = 0;
    while (checked < 20) {
        const Vector mu = nlipm::testing::random_vector(rng, 6);
        const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const double lambda = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        const Vector g = spca_inner_closed_form(mu, lambda, alpha);
        // Only instances whose inner optimum is clearly negative have a
        // unique minimizer on the sphere.
        if (g.norm() < (1.0 - alpha) + 0.1) continue;
        const Vector oracle = oracles::spca_subgradient_oracle(mu, lambda, alpha, 100000);
        EXPECT_GE(g.normalized().dot(oracle.normalized()), 1.0 - 1e-6);
        ++checked;
    }
}

TEST(IpmSparsePca, AlphaZeroOnDiagonalIsFullVariance) {
    const auto r = ipm_sparse_pca(diagonal_data(), 0.0, IpmConfig{}, vec({0.3, 0.8}));
    EXPECT_NEAR(std::abs(r.component.normalized()[0]), 1.0, 1e-8);
    EXPECT_NEAR(r.relativeVariance, 1.0, 1e-10);
}

TEST(IpmSparsePca, AlphaOneSelectsMaximalVarianceFeature) {
    const auto r = ipm_sparse_pca(diagonal_data(), 1.0, IpmConfig{}, vec({0.3, 0.8}));
    EXPECT_EQ(r.cardinality, 1u);
    EXPECT_NE(r.component[0], 0.0);
}

TEST(IpmSparsePca, RandomMatrixFixedPointAndLocalOptimality) {
    std::mt19937_64 rng(9);
    const DataMatrix d(random_matrix(rng, 20, 10));
    const auto r = ipm_sparse_pca(d, 0.5, IpmConfig{});
    EXPECT_NEAR(r.lambdaTrace.back(), spca_functional(d, r.component, 0.5), 1e-10);
    EXPECT_LE(r.fixedPointResidual, 1e-8);
    for (std::size_t k = 1; k < r.lambdaTrace.size(); ++k) EXPECT_LT(r.lambdaTrace[k], r.lambdaTrace[k - 1]);
    // No single-coordinate change of a support entry lowers F.
    for (Eigen::Index i = 0; i < r.component.size(); ++i) {
        if (r.component[i] == 0.0) continue;
        for (double h : {1e-4, -1e-4}) {
            Vector f = r.component;
            f[i] += h * std::abs(f[i]);
            EXPECT_GE(spca_functional(d, f, 0.5), r.objective - 1e-12);
        }
    }
    EXPECT_GE(r.cardinality, 1u);
    EXPECT_LE(r.relativeVariance, 1.0 + 1e-10);
    EXPECT_GT(r.relativeVariance, 0.0);
}

TEST(IpmSparsePca, AlphaZeroMatchesTopEigenvector) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const DataMatrix d(random_matrix(rng, 30, 3 + trial % 20));
        const auto r = ipm_sparse_pca(d, 0.0, IpmConfig{});
        const auto eig = oracles::dense_eigen(d.X().transpose() * d.X());
        const Vector top = eig.vectors.col(eig.vectors.cols() - 1);
        EXPECT_GE(std::abs(top.dot(r.component.normalized())), 1.0 - 1e-6);
    }
}

TEST(IpmSparsePca, ZeroThresholdFallsBackToLargestCoordinate) {
    // At alpha = 1 and f = e_0 / ||x_0|| the only nonzero lambda mu_i sits
    // exactly on the threshold, so every coordinate is cut away.
    Matrix x(4, 3);
    x << 1, 1, 1, -1, 1, -1, 1, -1, -1, -1, -1, 1;
    const DataMatrix d(x);
    bool fallback = false;
    const Vector f = spca_step(d, vec({0.5, 0, 0}), 1.0, &fallback);
    EXPECT_TRUE(fallback);
    EXPECT_EQ((f.array() != 0.0).count(), 1);
    EXPECT_NE(f[0], 0.0);
    EXPECT_NEAR((d.X() * f).norm(), 1.0, 1e-15);
}

TEST(IpmSparsePca, InvalidAlpha) {
    EXPECT_THROW(ipm_sparse_pca(diagonal_data(), -0.1, IpmConfig{}), DomainError);
}

TEST(TradeoffSweep, EndpointsAndBaseline) {
    std::mt19937_64 rng(11);
    const DataMatrix d(random_matrix(rng, 50, 20));
    std::vector<double> alphas;
    for (int k = 0; k <= 10; ++k) alphas.push_back(k / 10.0);
    IpmConfig cfg;
    cfg.restarts = 3;
    const auto rows = tradeoff_sweep(d, alphas, cfg);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows.front().cardinality, 20u);
    EXPECT_NEAR(rows.front().relativeVariance, 1.0, 1e-8);
    EXPECT_EQ(rows.back().cardinality, 1u);
    const Matrix sigma = d.X().transpose() * d.X();
    EXPECT_NEAR(rows.back().relativeVariance, sigma.diagonal().maxCoeff() / d.top_eigenvalue(), 1e-10);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const auto cold = ipm_sparse_pca(d, alphas[a], cfg);
        EXPECT_LE(rows[a].objective, cold.objective);
    }
    EXPECT_THROW(tradeoff_sweep(d, {0.5, 0.1}, cfg), std::invalid_argument);
}
