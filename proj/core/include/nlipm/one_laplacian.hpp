#pragma once

#include "nlipm/dual_fista.hpp"
#include "nlipm/functionals.hpp"
#include "nlipm/graph.hpp"
#include "nlipm/ipm.hpp"
#include "nlipm/threshold.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace nlipm::onelap {

/// sum over edges w_ij |f_i - f_j|.
double total_variation(const SparseGraph& g, const Vector& f);

/// total_variation(f) / ||f||_1. Throws DomainError for f = 0.
double f1(const SparseGraph& g, const Vector& f);

/// sign(f_i) on nonzero entries; zero entries share -(|f+| - |f-|) / |f0|
/// so that the result sums to zero. Throws ContractViolation if f has no
/// zero entry and unequal positive and negative counts.
Vector balanced_sign(const Vector& f);

/// The ceil(n/2)-th smallest entry.
double lower_median(const Vector& g);

/// g - lower_median(g).
Vector median_zero_shift(const Vector& g);

/// Total variation over the 1-norm as a generic pair, sign(0) := 0.
FunctionalPair total_variation_pair(const SparseGraph& g);

/// Outer iterate f^k (median zero, unit 1-norm), lambda^k = F1(f^k) and
/// the sign vector v^k used for the next inner problem.
struct OneLapState {
    const Vector& f;
    double lambda;
    const Vector& v;
};

struct InnerOptions {
    std::size_t maxIters = 10000;
    double earlyExitFraction = 1e-3;
    std::size_t minIters = 20;
    std::function<void(const OneLapState&)> observer;  // called once per outer iterate
};

struct InnerSolveRecord {
    std::size_t iterations = 0;
    double gap = 0.0;
    double primal = 0.0;
    FistaExit exit = FistaExit::MaxIterations;
    bool accurate = false;   // full tolerance was demanded
    double tolerance = 0.0;  // gap bound of a Gap exit
};

struct OneLaplacianResult {
    EigenResult eigen;  // vector has median zero and unit 1-norm
    DualEdgeState dual;
    std::vector<InnerSolveRecord> innerSolves;
    Threshold finalThreshold;  // optimal threshold of the returned vector
    Threshold bestThreshold;   // lowest ratio Cheeger cut over all iterates
};

/// Modified inverse power method for a nonconstant eigenvector of the
/// graph 1-Laplacian. f0 is median-shifted and rescaled first. Throws
/// DisconnectedGraph for a disconnected graph and DomainError for a
/// constant f0.
OneLaplacianResult ipm_one_laplacian(const SparseGraph& g, const Vector& f0, const IpmConfig& cfg,
                                     const InnerOptions& inner = {});

/// Residual of the eigenvector condition 0 in Delta_1 f - lambda sign(f)
/// witnessed by `dual`; the max of the stationarity residual, the
/// complementarity gap and the sign-consistency violation.
double certify_eigenvector(const SparseGraph& g, const Vector& f, double lambda,
                           const DualEdgeState& dual);

/// Random start: standard normal entries, median-shifted, unit 1-norm.
Vector random_initialization(std::size_t n, std::uint64_t seed);

/// 1_C / |C| with C the smaller side of the optimal threshold of the
/// second eigenvector of the standard graph Laplacian; also returns that
/// threshold.
Vector spectral_initialization(const SparseGraph& g, Threshold* spectralThreshold = nullptr);

struct RestartRun {
    bool spectral = false;
    std::uint64_t seed = 0;
    OneLaplacianResult result;
};

struct RestartOutcome {
    std::vector<RestartRun> runs;  // cfg.restarts random runs, then the spectral run
    std::size_t best = 0;          // lowest bestThreshold.value; ties go to converged runs, then lower eigenvalue
    Threshold spectralThreshold;
};

/// cfg.restarts random starts with seeds derived from cfg.seed plus one
/// spectral start if `withSpectral`. Runs concurrently per NLIPM_THREADS.
RestartOutcome ipm_one_laplacian_restarts(const SparseGraph& g, const IpmConfig& cfg,
                                          bool withSpectral = true, const InnerOptions& inner = {});

}  // namespace nlipm::onelap
