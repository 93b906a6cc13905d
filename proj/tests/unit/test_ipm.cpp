#include "nlipm/errors.hpp"
#include "nlipm/ipm.hpp"
#include "nlipm/sparse_pca.hpp"

#include "fixtures.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nlipm;
using nlipm::testing::random_spd;
using nlipm::testing::random_vector;

namespace {

// Exact inner step of the quadratic pair: argmin <u, A u> - <u, s> = A^{-1} s / 2.
InnerSolverPGt1 quadratic_solver(const Matrix& A) {
    auto llt = std::make_shared<Eigen::LLT<Matrix>>(A);
    return [llt](const InnerProblemPGt1& p) { return Vector(0.5 * llt->solve(p.subgradient)); };
}

// Cubic pair: minimizer of sum |u|^3 - <u, s> is sign(s) sqrt(|s| / 3).
Vector cubic_solver(const InnerProblemPGt1& p) {
    return p.subgradient.unaryExpr([](double s) { return std::copysign(std::sqrt(std::abs(s) / 3.0), s); });
}

void expect_strictly_decreasing(const std::vector<double>& trace) {
    for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_LT(trace[k], trace[k - 1]) << "at " << k;
}

}  // namespace

TEST(IpmConfig, Validate) {
    IpmConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.epsilon = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = IpmConfig{};
    cfg.maxOuterIters = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(IpmP1, CoordinateVectorTerminatesImmediately) {
    const auto r = ipm_p1(pairs::l1_over_l2(), l1_ball_inner_solver, IpmConfig{}, Vector::Unit(4, 0));
    EXPECT_TRUE(r.terminated);
    EXPECT_EQ(r.eigenvalue, 1.0);
    EXPECT_EQ(r.vector, Vector::Unit(4, 0));
    EXPECT_EQ(r.objectiveTrace.size(), 1u);
    EXPECT_LE(r.residual, IpmConfig{}.innerTolerance);
}

TEST(IpmP1, RandomStartReachesSignedCoordinateVector) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = ipm_p1(pairs::l1_over_l2(), l1_ball_inner_solver, IpmConfig{}, random_vector(rng, 5));
        EXPECT_TRUE(r.converged);
        EXPECT_NEAR(r.eigenvalue, 1.0, 1e-12);
        EXPECT_EQ((r.vector.array() != 0.0).count(), 1);
        EXPECT_NEAR(r.vector.cwiseAbs().maxCoeff(), 1.0, 1e-12);
        expect_strictly_decreasing(r.objectiveTrace);
    }
}

TEST(IpmP1, PositiveInnerObjectiveIsContractViolation) {
    const InnerSolverP1 bad = [](const InnerProblemP1& p) { return Vector(-p.subgradient / p.subgradient.norm()); };
    EXPECT_THROW(ipm_p1(pairs::l1_over_l2(), bad, IpmConfig{}, Vector::Ones(3)), ContractViolation);
}

TEST(IpmP1, ZeroStartIsDomainError) {
    EXPECT_THROW(ipm_p1(pairs::l1_over_l2(), l1_ball_inner_solver, IpmConfig{}, Vector::Zero(3)), DomainError);
}

TEST(IpmP1, IterationCapFlagsUnconverged) {
    IpmConfig cfg;
    cfg.maxOuterIters = 1;
    cfg.epsilon = 1e-300;
    Vector f0(5);
    f0 << 1.0, 0.9, 0.8, 0.7, 0.6;
    const auto r = ipm_p1(pairs::l1_over_l2(), l1_ball_inner_solver, cfg, f0);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 1u);
}

TEST(IpmP1, EarlyExitSolverStillDescends) {
    // Any inner point with negative objective gives descent: take the
    // segment halfway between the iterate and the exact solution.
    const InnerSolverP1 partial = [](const InnerProblemP1& p) {
        const Vector exact = l1_ball_inner_solver(p);
        Vector u = 0.5 * exact + 0.5 * p.iterate;
        return Vector(u / std::max(1.0, u.norm()));
    };
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = ipm_p1(pairs::l1_over_l2(), partial, IpmConfig{}, random_vector(rng, 6));
        expect_strictly_decreasing(r.objectiveTrace);
        EXPECT_LE(r.eigenvalue, r.objectiveTrace.front());
    }
}

TEST(IpmP1, SparsePcaPairMatchesSparsePcaDriver) {
    Matrix X = Matrix::Zero(6, 2);
    // Columns with variances proportional to 3 and 1 and no correlation.
    X.col(0) << 1, -1, 1, -1, 1, -1;
    X.col(0) *= std::sqrt(3.0);
    X.col(1) << 1, 1, -1, -1, 0, 0;
    X.col(1) *= std::sqrt(6.0 / 4.0);
    const spca::DataMatrix data(X);
    IpmConfig cfg;
    cfg.epsilon = 1e-12;
    Vector f0(2);
    f0 << 0.3, 0.7;
    const auto generic = ipm_p1(spca::spca_pair(data, 0.5), spca::spca_inner_solver(0.5), cfg, f0);
    const auto direct = spca::ipm_sparse_pca(data, 0.5, cfg, f0);
    EXPECT_NEAR(generic.eigenvalue, direct.objective, 1e-8);
    EXPECT_NEAR(std::abs(generic.vector.normalized().dot(direct.component.normalized())), 1.0, 1e-8);
}

TEST(IpmPGt1, DiagonalQuadraticIsLinearInversePowerMethod) {
    const Matrix A = Eigen::Vector3d(1, 2, 3).asDiagonal();
    const auto r = ipm_pgt1(pairs::quadratic(A), quadratic_solver(A), IpmConfig{}, Vector::Ones(3));
    EXPECT_NEAR(r.eigenvalue, 1.0, 1e-6);
    EXPECT_NEAR(std::abs(r.vector.normalized()[0]), 1.0, 1e-3);
    expect_strictly_decreasing(r.objectiveTrace);
}

TEST(IpmPGt1, EigenvectorStartIsFixedPoint) {
    const Matrix A = Eigen::Vector3d(1, 2, 3).asDiagonal();
    const auto r = ipm_pgt1(pairs::quadratic(A), quadratic_solver(A), IpmConfig{}, Vector::Unit(3, 1));
    EXPECT_TRUE(r.terminated);
    EXPECT_DOUBLE_EQ(r.eigenvalue, 2.0);
}

TEST(IpmPGt1, CubicPairConvergesToOne) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = ipm_pgt1(pairs::cubic(), cubic_solver, IpmConfig{}, random_vector(rng, 5));
        EXPECT_NEAR(r.eigenvalue, 1.0, 1e-12);
        EXPECT_NEAR(pairs::cubic().evalS(r.vector), 1.0, 1e-12);
    }
}

TEST(IpmPGt1, ZeroInnerSolutionIsDegenerate) {
    const InnerSolverPGt1 zero = [](const InnerProblemPGt1& p) { return Vector(Vector::Zero(p.iterate.size())); };
    const Matrix A = Matrix::Identity(3, 3) * 2.0;
    EXPECT_THROW(ipm_pgt1(pairs::quadratic(A), zero, IpmConfig{}, Vector::Ones(3)), DegenerateStep);
}

TEST(IpmPGt1, NormalizationKeepsUnitS) {
    std::mt19937_64 rng(13);
    const Matrix A = random_spd(rng, 6);
    const auto r = ipm_pgt1(pairs::quadratic(A), quadratic_solver(A), IpmConfig{}, random_vector(rng, 6));
    EXPECT_NEAR(r.vector.squaredNorm(), 1.0, 1e-12);
}

TEST(IpmPGt1, DirectionsMatchLinearSolves) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix A = random_spd(rng, 5);
        IpmConfig cfg;
        cfg.maxOuterIters = 6;
        cfg.epsilon = 1e-300;
        const Vector f0 = random_vector(rng, 5);
        const auto r = ipm_pgt1(pairs::quadratic(A), quadratic_solver(A), cfg, f0);
        // Classical inverse power method: A f^{k+1} = f^k.
        Vector f = f0.normalized();
        for (std::size_t k = 0; k < r.iterations; ++k) f = A.llt().solve(f).normalized();
        EXPECT_NEAR(std::abs(f.dot(r.vector.normalized())), 1.0, 1e-12);
    }
}

TEST(IpmPGt1, SmallestEigenvalueOfRandomSpd) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix A = random_spd(rng, 8);
        IpmConfig cfg;
        cfg.epsilon = 1e-14;
        const auto r = ipm_pgt1(pairs::quadratic(A), quadratic_solver(A), cfg, random_vector(rng, 8));
        const double lmin = Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues()(0);
        EXPECT_NEAR(r.eigenvalue, lmin, 1e-8 * lmin);
    }
}
