#include "nlipm/dual_fista.hpp"

#include "nlipm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlipm::onelap {

DualEdgeState DualEdgeState::zeros(std::size_t edgeCount) {
    DualEdgeState s;
    s.alpha = Vector::Zero(static_cast<Eigen::Index>(edgeCount));
    s.previousBeta = s.alpha;
    s.t = 1.0;
    return s;
}

Vector apply_dual_operator(const SparseGraph& g, const Vector& alpha) {
    if (static_cast<std::size_t>(alpha.size()) != g.edge_count())
        throw std::invalid_argument("apply_dual_operator: alpha size must equal edge count");
    Vector out = Vector::Zero(static_cast<Eigen::Index>(g.vertex_count()));
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const double x = edges[e].w * alpha[static_cast<Eigen::Index>(e)];
        out[static_cast<Eigen::Index>(edges[e].i)] += x;
        out[static_cast<Eigen::Index>(edges[e].j)] -= x;
    }
    return out;
}

double dual_objective(const SparseGraph& g, const Vector& alpha, double lambda, const Vector& v) {
    return (apply_dual_operator(g, alpha) - lambda * v).squaredNorm();
}

Vector dual_gradient_ordered(const SparseGraph& g, const Vector& alpha, double lambda,
                             const Vector& v) {
    const Vector z = apply_dual_operator(g, alpha) - lambda * v;
    const auto& edges = g.edges();
    Vector grad(static_cast<Eigen::Index>(2 * edges.size()));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        grad[static_cast<Eigen::Index>(2 * e)] = 2.0 * edges[e].w * z[static_cast<Eigen::Index>(edges[e].i)];
        grad[static_cast<Eigen::Index>(2 * e + 1)] =
            2.0 * edges[e].w * z[static_cast<Eigen::Index>(edges[e].j)];
    }
    return grad;
}

Vector ordered_dual(const Vector& alpha) {
    Vector out(2 * alpha.size());
    for (Eigen::Index e = 0; e < alpha.size(); ++e) {
        out[2 * e] = alpha[e];
        out[2 * e + 1] = -alpha[e];
    }
    return out;
}

double lipschitz_bound(const SparseGraph& g) { return 2.0 * g.max_squared_weight_sum(); }

const char* to_string(FistaExit exit) {
    switch (exit) {
        case FistaExit::Gap: return "gap";
        case FistaExit::EarlyExit: return "early-exit";
        case FistaExit::ZeroOptimum: return "zero-optimum";
        case FistaExit::MaxIterations: return "max-iterations";
    }
    return "unknown";
}

namespace {

// The gap costs about as much as a step; after the first iterations it is
// evaluated on every kCheckStride-th iterate only.
constexpr std::size_t kDenseChecks = 32;
constexpr std::size_t kCheckStride = 4;

double total_variation(const SparseGraph& g, const Vector& u) {
    double tv = 0.0;
    for (const auto& e : g.edges())
        tv += e.w * std::abs(u[static_cast<Eigen::Index>(e.i)] - u[static_cast<Eigen::Index>(e.j)]);
    return tv;
}

}  // namespace

FistaResult fista_inner(const SparseGraph& g, double lambda, const Vector& v,
                        const DualEdgeState& warm, const FistaOptions& options) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    if (v.size() != n) throw std::invalid_argument("fista_inner: v size must equal vertex count");
    if (std::abs(v.sum()) > 1e-9 * std::max<double>(1.0, static_cast<double>(n)))
        throw ContractViolation("fista_inner: <v, 1> must be zero");
    if (!(lambda >= 0.0)) throw DomainError("fista_inner: lambda must be nonnegative");

    const double scale = std::max(1.0, lambda);
    const double tol = options.tol * scale;
    const auto& edges = g.edges();

    FistaResult res;
    Vector beta = warm.alpha.size() == m ? warm.alpha : Vector::Zero(m);
    beta = beta.cwiseMax(-1.0).cwiseMin(1.0);
    const Vector lv = lambda * v;

    // z = A beta - lambda v, maintained for both the current and previous
    // projected iterates so the extrapolated residual costs no extra pass.
    Vector z = apply_dual_operator(g, beta) - lv;
    Vector zPrev = z;
    Vector betaPrev = beta;
    Vector y = beta;
    Vector zy = z;
    double t = 1.0;

    if (m == 0 || lipschitz_bound(g) == 0.0) {
        // No edges: the dual is constant and the residual is -lambda v.
        const double nz = z.norm();
        res.dual = DualEdgeState{beta, beta, 1.0};
        res.dualValue = -nz;
        if (nz == 0.0) {
            res.u = Vector::Zero(n);
            res.exit = FistaExit::ZeroOptimum;
        } else {
            res.u = -z / nz;
            res.primal = -nz;
            res.exit = FistaExit::Gap;
        }
        return res;
    }
    const double invL = 1.0 / lipschitz_bound(g);

    Vector u(n);
    Vector bestU;
    double bestPhi = std::numeric_limits<double>::infinity();
    double bestDual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0;; ++it) {
        res.iterations = it;
        const bool check = it < kDenseChecks || it % kCheckStride == 0 || it >= options.maxIters;
        if (check) {
            const double nz = z.norm();
            if (nz <= 1e-15 * scale) {
                res.u = Vector::Zero(n);
                res.primal = 0.0;
                res.dualValue = -nz;
                res.gap = nz;
                res.exit = FistaExit::ZeroOptimum;
                break;
            }
            u = -z / nz;
            const double phi = total_variation(g, u) - lambda * u.dot(v);
            // Both bounds are kept at their best over all checks.
            if (phi < bestPhi) {
                bestPhi = phi;
                bestU = u;
            }
            bestDual = std::min(bestDual, nz);
            res.primal = bestPhi;
            res.dualValue = -bestDual;
            res.gap = std::max(0.0, std::min(bestPhi, 0.0) + bestDual);
            if (res.gap <= tol) {
                res.u = bestU;
                res.exit = FistaExit::Gap;
                break;
            }
            if (options.allowEarlyExit && it >= options.minIters &&
                (bestPhi < -options.earlyExitFraction * lambda ||
                 (bestPhi < 0.0 && res.gap <= options.descentGapFraction * -bestPhi))) {
                res.u = bestU;
                res.exit = FistaExit::EarlyExit;
                break;
            }
            if (it >= options.maxIters) {
                res.u = bestU;
                res.exit = FistaExit::MaxIterations;
                break;
            }
        }

        // Projected gradient step at y, fused with the residual of the new
        // projected point.
        betaPrev.swap(beta);
        zPrev.swap(z);
        z = -lv;
        double momentum = 0.0;
        for (Eigen::Index e = 0; e < m; ++e) {
            const auto& ed = edges[static_cast<std::size_t>(e)];
            const auto i = static_cast<Eigen::Index>(ed.i);
            const auto j = static_cast<Eigen::Index>(ed.j);
            const double step = y[e] - invL * ed.w * (zy[i] - zy[j]);
            const double b = std::clamp(step, -1.0, 1.0);
            momentum += (y[e] - b) * (b - betaPrev[e]);
            beta[e] = b;
            z[i] += ed.w * b;
            z[j] -= ed.w * b;
        }
        // Gradient restart: drop the momentum once it points uphill.
        if (options.adaptiveRestart && momentum > 0.0) t = 1.0;
        const double tNext = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double c = (t - 1.0) / tNext;
        y = beta + c * (beta - betaPrev);
        zy = z + c * (z - zPrev);
        t = tNext;
    }
    res.dual = DualEdgeState{beta, betaPrev, t};
    return res;
}

}  // namespace nlipm::onelap
