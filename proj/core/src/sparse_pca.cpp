#include "nlipm/sparse_pca.hpp"

#include "nlipm/errors.hpp"
#include "nlipm/seeding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nlipm::spca {

namespace {

// Iteration cap of the fixed-point polish that follows the lambda stop.
constexpr std::size_t kPolishIters = 20000;
constexpr double kFixedPointTol = 1e-8;

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("sparse pca: alpha must lie in [0, 1]");
}

double numerator(const Vector& f, double alpha) { return (1.0 - alpha) * f.norm() + alpha * f.lpNorm<1>(); }

double aligned_distance(const Vector& a, const Vector& b) { return std::min((a - b).norm(), (a + b).norm()); }

}  // namespace

DataMatrix::DataMatrix(Matrix raw, bool dropZeroColumns) {
    if (raw.rows() == 0 || raw.cols() == 0) throw DomainError("DataMatrix: empty matrix");
    raw.rowwise() -= raw.colwise().mean();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
        const bool zero = raw.col(j).cwiseAbs().maxCoeff() == 0.0;
        if (zero && dropZeroColumns)
            dropped_.push_back(static_cast<std::size_t>(j));
        else
            keep.push_back(j);
    }
    if (keep.empty()) throw DomainError("DataMatrix: every column is constant");
    x_.resize(raw.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        x_.col(static_cast<Eigen::Index>(k)) = raw.col(keep[k]);
        kept_.push_back(static_cast<std::size_t>(keep[k]));
    }
    norms_ = x_.colwise().norm().transpose();
    const Matrix gram = x_.rows() < x_.cols() ? Matrix(x_ * x_.transpose()) : Matrix(x_.transpose() * x_);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    topEigenvalue_ = eig.eigenvalues().maxCoeff();
}

double spca_functional(const DataMatrix& X, const Vector& f, double alpha) {
    check_alpha(alpha);
    if (f.size() != X.cols()) throw std::invalid_argument("spca_functional: size mismatch");
    const double denom = (X.X() * f).norm();
    if (!(denom > 0.0)) throw DomainError("spca_functional: X f = 0");
    return numerator(f, alpha) / denom;
}

Vector spca_inner_closed_form(const Vector& mu, double lambda, double alpha, bool* allZero) {
    check_alpha(alpha);
    if (!(lambda > 0.0)) throw DomainError("spca_inner_closed_form: lambda must be positive");
    Vector g(mu.size());
    bool zero = true;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        const double mag = lambda * std::abs(mu[i]) - alpha;
        if (mag > 0.0) {
            g[i] = mu[i] > 0.0 ? mag : -mag;
            zero = false;
        } else {
            g[i] = 0.0;
        }
    }
    if (allZero) *allZero = zero;
    return g;
}

FunctionalPair spca_pair(const DataMatrix& X, double alpha) {
    check_alpha(alpha);
    const Matrix x = X.X();
    FunctionalPair p;
    p.name = "sparse-pca";
    p.degree = 1.0;
    p.evalR = [alpha](const Vector& f) { return numerator(f, alpha); };
    p.evalS = [x](const Vector& f) { return (x * f).norm(); };
    p.subgradR = [alpha](const Vector& f) {
        Vector r = f.unaryExpr([alpha](double v) { return v > 0.0 ? alpha : (v < 0.0 ? -alpha : 0.0); });
        const double nf = f.norm();
        if (nf > 0.0) r += (1.0 - alpha) * f / nf;
        return r;
    };
    p.subgradS = [x](const Vector& f) {
        const Vector xf = x * f;
        const double nxf = xf.norm();
        return nxf > 0.0 ? Vector(x.transpose() * xf / nxf) : Vector(Vector::Zero(f.size()));
    };
    return p;
}

InnerSolverP1 spca_inner_solver(double alpha) {
    check_alpha(alpha);
    return [alpha](const InnerProblemP1& problem) {
        const Vector g = spca_inner_closed_form(problem.subgradient, problem.lambda, alpha);
        const double ng = g.norm();
        if (!(ng > 1.0 - alpha)) return Vector(Vector::Zero(g.size()));
        return Vector(g / ng);
    };
}

Vector spca_step(const DataMatrix& X, const Vector& f, double alpha, bool* fallback) {
    const Vector xf = X.X() * f;
    const double nxf = xf.norm();
    if (!(nxf > 0.0)) throw DegenerateStep("sparse pca: iterate in the null space of X");
    const double lambda = numerator(f, alpha) / nxf;
    const Vector mu = X.X().transpose() * xf / nxf;
    bool zero = false;
    Vector g = spca_inner_closed_form(mu, lambda, alpha, &zero);
    if (zero) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < mu.size(); ++i)
            if (std::abs(mu[i]) > std::abs(mu[best])) best = i;
        g.setZero();
        g[best] = mu[best] >= 0.0 ? 1.0 : -1.0;
    }
    if (fallback) *fallback = zero;
    const double nxg = (X.X() * g).norm();
    if (!(nxg > 0.0)) throw DegenerateStep("sparse pca: inner solution in the null space of X");
    return g / nxg;
}

Vector default_initialization(const DataMatrix& X) {
    Eigen::Index j = 0;
    for (Eigen::Index k = 1; k < X.cols(); ++k)
        if (X.column_norms()[k] > X.column_norms()[j]) j = k;
    Vector f = X.X().transpose() * X.X().col(j);
    const double nxf = (X.X() * f).norm();
    if (!(nxf > 0.0)) throw DegenerateStep("sparse pca: degenerate default start");
    return f / nxf;
}

Vector random_initialization(const DataMatrix& X, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector f(X.cols());
    for (auto& x : f) x = normal(rng);
    const double nxf = (X.X() * f).norm();
    if (!(nxf > 0.0)) throw DegenerateStep("sparse pca: degenerate random start");
    return f / nxf;
}

SparsePcaResult ipm_sparse_pca(const DataMatrix& X, double alpha, const IpmConfig& cfg, Vector f0) {
    check_alpha(alpha);
    cfg.validate();
    Vector f = f0.size() == 0 ? default_initialization(X) : std::move(f0);
    if (f.size() != X.cols()) throw std::invalid_argument("ipm_sparse_pca: f0 size must equal column count");
    {
        const double nxf = (X.X() * f).norm();
        if (!(nxf > 0.0)) throw DomainError("ipm_sparse_pca: X f0 = 0");
        f /= nxf;
    }

    SparsePcaResult res;
    res.alpha = alpha;
    double lambda = numerator(f, alpha);
    res.lambdaTrace.push_back(lambda);

    Vector next;
    for (std::size_t k = 0; k < cfg.maxOuterIters; ++k) {
        bool fallback = false;
        next = spca_step(X, f, alpha, &fallback);
        res.fallbackUsed |= fallback;
        const double nextLambda = numerator(next, alpha);
        if (!(nextLambda < lambda)) {
            res.converged = true;
            break;
        }
        const double change = (lambda - nextLambda) / lambda;
        f = next;
        lambda = nextLambda;
        res.lambdaTrace.push_back(lambda);
        ++res.iterations;
        if (change < cfg.epsilon) {
            res.converged = true;
            break;
        }
    }

    // Polish to a fixed point; the trace only records strict decrease.
    for (std::size_t k = 0; k < kPolishIters; ++k) {
        bool fallback = false;
        next = spca_step(X, f, alpha, &fallback);
        if (aligned_distance(next, f) <= kFixedPointTol) break;
        res.fallbackUsed |= fallback;
        const double nextLambda = numerator(next, alpha);
        if (nextLambda > lambda * (1.0 + 1e-14)) break;
        f = next;
        if (nextLambda < lambda) {
            lambda = nextLambda;
            res.lambdaTrace.push_back(lambda);
        }
        ++res.iterations;
    }

    res.component = f;
    res.fixedPointResidual = aligned_distance(spca_step(X, f, alpha), f);
    res.objective = spca_functional(X, f, alpha);
    res.cardinality = static_cast<std::size_t>((f.array() != 0.0).count());
    res.explainedVariance = (X.X() * f).squaredNorm() / f.squaredNorm();
    res.relativeVariance = res.explainedVariance / X.top_eigenvalue();
    return res;
}

std::vector<SparsePcaResult> tradeoff_sweep(const DataMatrix& X, const std::vector<double>& alphas,
                                            const IpmConfig& cfg) {
    if (!std::is_sorted(alphas.begin(), alphas.end()))
        throw std::invalid_argument("tradeoff_sweep: alphas must be ascending");
    std::vector<SparsePcaResult> out;
    out.reserve(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        std::vector<Vector> starts;
        if (!out.empty()) starts.push_back(out.back().component);
        starts.push_back(default_initialization(X));
        const std::uint64_t lane = derive_seed(cfg.seed, a);
        for (std::size_t r = 0; r < cfg.restarts; ++r) starts.push_back(random_initialization(X, derive_seed(lane, r)));

        std::vector<SparsePcaResult> runs(starts.size());
        parallel_for(starts.size(), [&](std::size_t i) { runs[i] = ipm_sparse_pca(X, alphas[a], cfg, starts[i]); });
        std::size_t best = 0;
        for (std::size_t i = 1; i < runs.size(); ++i)
            if (runs[i].objective < runs[best].objective) best = i;
        out.push_back(std::move(runs[best]));
    }
    return out;
}

}  // namespace nlipm::spca
