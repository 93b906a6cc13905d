#include "nlipm/ipm.hpp"

#include "nlipm/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlipm {

void IpmConfig::validate() const {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("IpmConfig: epsilon must be positive");
    }
    if (maxOuterIters == 0) {
        throw std::invalid_argument("IpmConfig: maxOuterIters must be at least 1");
    }
    if (!(innerTolerance > 0.0)) {
        throw std::invalid_argument("IpmConfig: innerTolerance must be positive");
    }
}

namespace {

// Slack allowed on the sign of the inner objective before the solver is
// declared to have broken its contract.
constexpr double kContractSlack = 1e-12;

void finish(const FunctionalPair& pair, const IpmConfig& cfg, EigenResult& result) {
    result.eigenvalue = result.objectiveTrace.back();
    result.residual = verify_eigenpair(pair, result.vector, result.eigenvalue, cfg.innerTolerance).residual;
}

}  // namespace

EigenResult ipm_p1(const FunctionalPair& pair, const InnerSolverP1& inner, const IpmConfig& cfg,
                   Vector f0) {
    cfg.validate();
    const double norm0 = f0.norm();
    if (!(norm0 > 0.0)) {
        throw DomainError("ipm_p1: zero initial vector");
    }
    EigenResult result;
    result.vector = f0 / norm0;
    double lambda = evaluate_ratio(pair, result.vector);
    result.objectiveTrace.push_back(lambda);

    for (std::size_t k = 0; k < cfg.maxOuterIters; ++k) {
        if (lambda <= 0.0) {
            // R vanishes at f: F attains its lower bound, f is an eigenvector.
            result.terminated = true;
            break;
        }
        const Vector s = pair.subgradS(result.vector);
        const Vector u = inner(InnerProblemP1{result.vector, s, lambda});
        if (u.size() != result.vector.size()) {
            throw ContractViolation("ipm_p1: inner solver returned a vector of wrong size");
        }
        if (u.norm() > 1.0 + 1e-10) {
            throw ContractViolation("ipm_p1: inner solver left the unit ball");
        }
        const double phi = pair.evalR(u) - lambda * u.dot(s);
        if (phi > kContractSlack * std::max(1.0, lambda)) {
            std::ostringstream msg;
            msg << "ipm_p1: inner solver returned positive objective " << phi;
            throw ContractViolation(msg.str());
        }
        ++result.iterations;
        if (phi >= -kZeroInnerOptimum * lambda) {
            result.terminated = true;
            break;
        }
        // Phi is 1-homogeneous, so moving u onto the sphere keeps Phi(u) < 0.
        Vector next = u / u.norm();
        const double nextLambda = evaluate_ratio(pair, next);
        if (!(nextLambda < lambda)) {
            // Descent is lost to rounding only at an eigenvector.
            result.terminated = true;
            break;
        }
        const double relChange = (lambda - nextLambda) / lambda;
        result.vector = std::move(next);
        lambda = nextLambda;
        result.objectiveTrace.push_back(lambda);
        if (relChange < cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.converged = result.converged || result.terminated;
    finish(pair, cfg, result);
    return result;
}

EigenResult ipm_pgt1(const FunctionalPair& pair, const InnerSolverPGt1& inner,
                     const IpmConfig& cfg, Vector f0) {
    cfg.validate();
    const double p = pair.degree;
    if (!(p > 1.0)) {
        throw std::invalid_argument("ipm_pgt1: degree must exceed one");
    }
    if (f0.isZero(0.0)) {
        throw DomainError("ipm_pgt1: zero initial vector");
    }
    EigenResult result;
    result.vector = f0 / std::pow(pair.evalS(f0), 1.0 / p);
    double lambda = evaluate_ratio(pair, result.vector);
    result.objectiveTrace.push_back(lambda);

    for (std::size_t k = 0; k < cfg.maxOuterIters; ++k) {
        if (lambda <= 0.0) {
            result.terminated = true;
            break;
        }
        const Vector s = pair.subgradS(result.vector);
        const Vector g = inner(InnerProblemPGt1{result.vector, s});
        if (g.size() != result.vector.size()) {
            throw ContractViolation("ipm_pgt1: inner solver returned a vector of wrong size");
        }
        const double sg = pair.evalS(g);
        if (!(sg > 0.0)) {
            throw DegenerateStep("ipm_pgt1: inner solution has S(g) = 0");
        }
        // Reference point F(f)^{1/(1-p)} f attains the value the inner
        // optimum must beat for descent.
        const Vector reference = std::pow(lambda, 1.0 / (1.0 - p)) * result.vector;
        const double psiRef = pair.evalR(reference) - reference.dot(s);
        const double psi = pair.evalR(g) - g.dot(s);
        const double scale = std::max(1.0, std::abs(psiRef));
        if (psi > psiRef + kContractSlack * scale) {
            std::ostringstream msg;
            msg << "ipm_pgt1: inner solver returned objective " << psi << " above reference "
                << psiRef;
            throw ContractViolation(msg.str());
        }
        ++result.iterations;
        if (psi >= psiRef - kZeroInnerOptimum * std::abs(psiRef)) {
            result.terminated = true;
            break;
        }
        Vector next = g / std::pow(sg, 1.0 / p);
        const double nextLambda = evaluate_ratio(pair, next);
        if (!(nextLambda < lambda)) {
            result.terminated = true;
            break;
        }
        const double relChange = (lambda - nextLambda) / lambda;
        result.vector = std::move(next);
        lambda = nextLambda;
        result.objectiveTrace.push_back(lambda);
        if (relChange < cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.converged = result.converged || result.terminated;
    finish(pair, cfg, result);
    return result;
}

Vector l1_ball_inner_solver(const InnerProblemP1& problem) {
    const Vector scaled = problem.lambda * problem.subgradient;
    Vector g = scaled.unaryExpr([](double x) {
        const double m = std::abs(x) - 1.0;
        return m > 0.0 ? std::copysign(m, x) : 0.0;
    });
    const double n = g.norm();
    if (n > 0.0) {
        g /= n;
    }
    return g;
}

}  // namespace nlipm
