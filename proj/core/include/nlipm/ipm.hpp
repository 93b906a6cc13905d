#pragma once

#include "nlipm/functionals.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace nlipm {

struct IpmConfig {
    double epsilon = 1e-6;             // relative lambda-change stopping threshold
    std::size_t maxOuterIters = 10000;
    double innerTolerance = 1e-8;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;

    // Throws std::invalid_argument on epsilon <= 0 or maxOuterIters == 0.
    void validate() const;
};

struct EigenResult {
    Vector vector;
    double eigenvalue = 0.0;
    std::vector<double> objectiveTrace;  // lambda^0, lambda^1, ... strictly decreasing
    double residual = 0.0;
    std::size_t iterations = 0;
    bool terminated = false;  // inner optimum reached zero: the iterate was already an eigenvector
    bool converged = false;   // terminated, or relative lambda change fell below epsilon
};

/// Inner problem of the p = 1 iteration:
///   minimize R(u) - lambda <u, s>  subject to ||u||_2 <= 1.
struct InnerProblemP1 {
    const Vector& iterate;
    const Vector& subgradient;
    double lambda;
};
using InnerSolverP1 = std::function<Vector(const InnerProblemP1&)>;

/// Inner problem of the p > 1 iteration: minimize R(u) - <u, s> over all u.
struct InnerProblemPGt1 {
    const Vector& iterate;
    const Vector& subgradient;
};
using InnerSolverPGt1 = std::function<Vector(const InnerProblemPGt1&)>;

// Inner optimum counted as zero when Phi(u) >= -kZeroInnerOptimum * lambda.
inline constexpr double kZeroInnerOptimum = 1e-14;

/// Inverse power method for 1-homogeneous pairs. f0 is normalized to the
/// unit 2-sphere. Throws ContractViolation if the inner solver returns a
/// point with positive inner objective.
EigenResult ipm_p1(const FunctionalPair& pair, const InnerSolverP1& inner, const IpmConfig& cfg,
                   Vector f0);

/// Inverse power method for p > 1. Each step solves the unconstrained
/// inner problem and renormalizes to S(f) = 1. Throws DegenerateStep if
/// the inner solution has S(g) = 0.
EigenResult ipm_pgt1(const FunctionalPair& pair, const InnerSolverPGt1& inner,
                     const IpmConfig& cfg, Vector f0);

/// Exact inner solver of the p = 1 problem for R = ||.||_1: soft
/// thresholding of lambda * s at level one, scaled onto the unit sphere.
Vector l1_ball_inner_solver(const InnerProblemP1& problem);

}  // namespace nlipm
