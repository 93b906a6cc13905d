#pragma once

#include "nlipm/functionals.hpp"
#include "nlipm/graph.hpp"

#include <cstddef>

namespace nlipm::onelap {

using graph::SparseGraph;

/// Dual variables of the inner problem, one per stored edge. alpha[e]
/// stands for alpha_ij = -alpha_ji on edge e = (i, j), i < j.
struct DualEdgeState {
    Vector alpha;
    Vector previousBeta;
    double t = 1.0;

    static DualEdgeState zeros(std::size_t edgeCount);
};

/// (A alpha)_i = sum_j w_ij alpha_ij.
Vector apply_dual_operator(const SparseGraph& g, const Vector& alpha);

/// Psi(alpha) = ||A alpha - lambda v||_2^2.
double dual_objective(const SparseGraph& g, const Vector& alpha, double lambda, const Vector& v);

/// Gradient of Psi over ordered edge pairs, layout [2e] = (i, j) and
/// [2e + 1] = (j, i) for stored edge e = (i, j). Entry (r, s) is
/// 2 w_rs ((A alpha)_r - lambda v_r).
Vector dual_gradient_ordered(const SparseGraph& g, const Vector& alpha, double lambda,
                             const Vector& v);

/// alpha expanded to ordered pairs in the same layout: (alpha_e, -alpha_e).
Vector ordered_dual(const Vector& alpha);

/// 2 max_r sum_s w_rs^2. Bounds the Lipschitz constant of the ordered
/// gradient above; the per-edge projected step alpha_e -= w_e (z_i - z_j) / L
/// is the antisymmetric projection of a gradient step with step 1/L.
double lipschitz_bound(const SparseGraph& g);

enum class FistaExit { Gap, EarlyExit, ZeroOptimum, MaxIterations };

const char* to_string(FistaExit exit);

struct FistaOptions {
    double tol = 1e-8;                // stop when gap <= tol * max(1, lambda)
    std::size_t maxIters = 50000;
    bool allowEarlyExit = false;
    double earlyExitFraction = 1e-3;  // exit once Phi(u) < -fraction * lambda ...
    std::size_t minIters = 20;        // ... and at least this many steps ran,
    double descentGapFraction = 1e-2; // or once Phi(u) < 0 is within this fraction of optimal
    bool adaptiveRestart = false;     // reset the momentum when it opposes the gradient step
};

struct FistaResult {
    Vector u;              // unit-norm primal point; zero when the optimum is zero
    DualEdgeState dual;
    double gap = 0.0;      // min(Phi(u), 0) + ||A alpha - lambda v||, nonnegative
    double primal = 0.0;   // Phi(u) = R(u) - lambda <u, v>
    double dualValue = 0.0;
    std::size_t iterations = 0;
    FistaExit exit = FistaExit::MaxIterations;

    bool zero_optimum() const { return exit == FistaExit::ZeroOptimum; }
};

/// Solves min_{||u||_2 <= 1} TV(u) - lambda <u, v> through its box
/// constrained dual with accelerated projected gradient steps. Requires
/// <v, 1> = 0. Warm starts from `warm.alpha` (empty means zeros).
FistaResult fista_inner(const SparseGraph& g, double lambda, const Vector& v,
                        const DualEdgeState& warm, const FistaOptions& options);

}  // namespace nlipm::onelap
