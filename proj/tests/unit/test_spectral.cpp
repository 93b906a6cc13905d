#include "nlipm/errors.hpp"
#include "nlipm/oracles/oracles.hpp"
#include "nlipm/spectral.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nlipm;
using namespace nlipm::graph;

TEST(Spectral, PathOfThree) {
    const auto r = spectral_second_eigenvector(nlipm::testing::path_graph(3));
    EXPECT_NEAR(r.eigenvalue, 1.0, 1e-12);
    EXPECT_NEAR(r.vector[0], 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(r.vector[1], 0.0, 1e-12);
    EXPECT_NEAR(r.vector[2], -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Spectral, CompleteGraphK3) {
    const auto g = nlipm::testing::complete_graph(3);
    const auto r = spectral_second_eigenvector(g);
    EXPECT_NEAR(r.eigenvalue, 3.0, 1e-12);
    const Vector Lv = dense_laplacian(g) * r.vector;
    EXPECT_LE((Lv - 3.0 * r.vector).norm(), 1e-12);
    EXPECT_NEAR(r.vector.sum(), 0.0, 1e-12);
}

TEST(Spectral, DisconnectedGraphIsRejected) {
    EXPECT_THROW(spectral_second_eigenvector(SparseGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}})), DisconnectedGraph);
}

TEST(Spectral, ResidualOnRandomConnectedGraphs) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 5 + seed % 40;
        const auto g = oracles::random_connected_graph(n, 0.2, seed);
        const auto r = spectral_second_eigenvector(g);
        const Vector Lv = dense_laplacian(g) * r.vector;
        EXPECT_LE((Lv - r.eigenvalue * r.vector).norm(), 1e-8);
        EXPECT_LE(std::abs(r.vector.sum()), 1e-10);
        EXPECT_NEAR(r.vector.norm(), 1.0, 1e-12);
        EXPECT_NEAR(r.eigenvalue, oracles::dense_eigen(dense_laplacian(g)).values(1), 1e-8);
    }
}

TEST(Spectral, SparsePathAboveDenseLimitMatchesDenseSolve) {
    const std::size_t n = kDenseSpectralLimit + 100;
    const auto g = oracles::random_connected_graph(n, 4.0 / static_cast<double>(n), 9);
    const auto r = spectral_second_eigenvector(g);
    const auto dense = oracles::dense_eigen(dense_laplacian(g));
    EXPECT_NEAR(r.eigenvalue, dense.values(1), 1e-8);
    EXPECT_LE((dense_laplacian(g) * r.vector - r.eigenvalue * r.vector).norm(), 1e-8);
    EXPECT_LE(std::abs(r.vector.sum()), 1e-10);
}
