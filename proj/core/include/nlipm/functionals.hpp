#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace nlipm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A ratio F(f) = R(f) / S(f) of nonnegative, convex, even, positively
/// p-homogeneous functionals together with one deterministic subgradient
/// selection for each of them.
///
/// All callables must be safe for concurrent read-only use; restarts run
/// against a shared pair.
struct FunctionalPair {
    std::function<double(const Vector&)> evalR;
    std::function<double(const Vector&)> evalS;
    std::function<Vector(const Vector&)> subgradR;
    std::function<Vector(const Vector&)> subgradS;
    double degree = 1.0;
    std::string name;
};

enum class Term { R, S };

/// R(f) / S(f). Throws DomainError for the zero vector.
double evaluate_ratio(const FunctionalPair& pair, const Vector& f);

struct EigenpairCheck {
    double residual = 0.0;
    bool accepted = false;
};

/// Smooth-point certificate ||r(f) - lambda s(f)|| / max(1, ||r(f)||).
/// Application modules with set-valued subdifferentials provide tighter
/// certificates of their own.
EigenpairCheck verify_eigenpair(const FunctionalPair& pair, const Vector& f, double lambda,
                                double tol);

/// |<f, g(f)> - p G(f)| / max(1, p G(f)) for G = R or S.
double check_euler_identity(const FunctionalPair& pair, const Vector& f, Term term = Term::R);

/// max(0, |<g(f), h>| - p G(f)^{1-1/p} G(h)^{1/p}) for G = R or S.
double check_hoelder_inequality(const FunctionalPair& pair, const Vector& f, const Vector& h,
                                Term term = Term::R);

namespace pairs {

// ||f||_1 / ||f||_2, p = 1.
FunctionalPair l1_over_l2();

// <f, A f> / ||f||_2^2 with A symmetric positive definite, p = 2.
FunctionalPair quadratic(Matrix A);

// sum |f_i|^3 / ||f||_3^3, p = 3. F is identically one.
FunctionalPair cubic();

}  // namespace pairs

}  // namespace nlipm
