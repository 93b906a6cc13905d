#include "nlipm/functionals.hpp"

#include "nlipm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace nlipm {

double evaluate_ratio(const FunctionalPair& pair, const Vector& f) {
    if (f.size() == 0 || f.isZero(0.0)) {
        throw DomainError("evaluate_ratio: zero vector");
    }
    const double s = pair.evalS(f);
    if (!(s > 0.0)) {
        throw DomainError("evaluate_ratio: S(f) vanishes");
    }
    return pair.evalR(f) / s;
}

EigenpairCheck verify_eigenpair(const FunctionalPair& pair, const Vector& f, double lambda,
                                double tol) {
    if (f.isZero(0.0)) {
        throw DomainError("verify_eigenpair: zero vector");
    }
    const Vector r = pair.subgradR(f);
    const Vector s = pair.subgradS(f);
    EigenpairCheck check;
    check.residual = (r - lambda * s).norm() / std::max(1.0, r.norm());
    check.accepted = check.residual <= tol;
    return check;
}

namespace {

const std::function<double(const Vector&)>& value_of(const FunctionalPair& pair, Term term) {
    return term == Term::R ? pair.evalR : pair.evalS;
}

const std::function<Vector(const Vector&)>& subgradient_of(const FunctionalPair& pair, Term term) {
    return term == Term::R ? pair.subgradR : pair.subgradS;
}

double sign_or_zero(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double check_euler_identity(const FunctionalPair& pair, const Vector& f, Term term) {
    const double pg = pair.degree * value_of(pair, term)(f);
    const double inner = f.dot(subgradient_of(pair, term)(f));
    return std::abs(inner - pg) / std::max(1.0, pg);
}

double check_hoelder_inequality(const FunctionalPair& pair, const Vector& f, const Vector& h,
                                Term term) {
    const double p = pair.degree;
    const auto& value = value_of(pair, term);
    const double bound = p * std::pow(value(f), 1.0 - 1.0 / p) * std::pow(value(h), 1.0 / p);
    const double lhs = std::abs(subgradient_of(pair, term)(f).dot(h));
    return std::max(0.0, lhs - bound);
}

namespace pairs {

FunctionalPair l1_over_l2() {
    FunctionalPair pair;
    pair.name = "l1/l2";
    pair.degree = 1.0;
    pair.evalR = [](const Vector& f) { return f.lpNorm<1>(); };
    pair.evalS = [](const Vector& f) { return f.norm(); };
    pair.subgradR = [](const Vector& f) -> Vector { return f.unaryExpr(&sign_or_zero); };
    pair.subgradS = [](const Vector& f) -> Vector {
        const double n = f.norm();
        return n > 0.0 ? Vector(f / n) : Vector::Zero(f.size());
    };
    return pair;
}

FunctionalPair quadratic(Matrix A) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("pairs::quadratic: matrix must be square");
    }
    FunctionalPair pair;
    pair.name = "quadratic";
    pair.degree = 2.0;
    // Shared ownership keeps the closures copyable and cheap.
    auto shared = std::make_shared<const Matrix>(std::move(A));
    pair.evalR = [shared](const Vector& f) { return f.dot(*shared * f); };
    pair.evalS = [](const Vector& f) { return f.squaredNorm(); };
    pair.subgradR = [shared](const Vector& f) -> Vector { return 2.0 * (*shared * f); };
    pair.subgradS = [](const Vector& f) -> Vector { return 2.0 * f; };
    return pair;
}

FunctionalPair cubic() {
    FunctionalPair pair;
    pair.name = "cubic";
    pair.degree = 3.0;
    auto value = [](const Vector& f) { return f.array().abs().cube().sum(); };
    auto grad = [](const Vector& f) -> Vector { return 3.0 * (f.array().abs() * f.array()).matrix(); };
    pair.evalR = value;
    pair.evalS = value;
    pair.subgradR = grad;
    pair.subgradS = grad;
    return pair;
}

}  // namespace pairs

}  // namespace nlipm
