#pragma once

#include "nlipm/functionals.hpp"
#include "nlipm/ipm.hpp"

#include <cstddef>
#include <vector>

namespace nlipm::spca {

/// Centered n x p data matrix, rows are observations.
class DataMatrix {
public:
    DataMatrix() = default;

    /// Centers every column. Columns that are zero after centering are
    /// dropped when `dropZeroColumns` is set; droppedColumns() lists their
    /// original indices. Throws DomainError if no column remains.
    explicit DataMatrix(Matrix raw, bool dropZeroColumns = true);

    const Matrix& X() const noexcept { return x_; }
    Eigen::Index rows() const noexcept { return x_.rows(); }
    Eigen::Index cols() const noexcept { return x_.cols(); }
    const Vector& column_norms() const noexcept { return norms_; }

    const std::vector<std::size_t>& dropped_columns() const noexcept { return dropped_; }
    /// Original column index of kept column k.
    std::size_t original_index(std::size_t k) const { return kept_.at(k); }

    /// Largest eigenvalue of X^T X, from the smaller of the two Gram matrices.
    double top_eigenvalue() const noexcept { return topEigenvalue_; }

private:
    Matrix x_;
    Vector norms_;
    std::vector<std::size_t> dropped_;
    std::vector<std::size_t> kept_;
    double topEigenvalue_ = 0.0;
};

/// ((1 - alpha) ||f||_2 + alpha ||f||_1) / ||X f||_2. Throws DomainError
/// when X f = 0.
double spca_functional(const DataMatrix& X, const Vector& f, double alpha);

/// g_i = sign(mu_i) (lambda |mu_i| - alpha)_+. Sets *allZero when every
/// component is thresholded away. Throws DomainError unless lambda > 0 and
/// alpha in [0, 1].
Vector spca_inner_closed_form(const Vector& mu, double lambda, double alpha, bool* allZero = nullptr);

/// R(f) = (1 - alpha) ||f||_2 + alpha ||f||_1 over S(f) = ||X f||_2, p = 1.
FunctionalPair spca_pair(const DataMatrix& X, double alpha);

/// Exact solver of the p = 1 inner problem for spca_pair: the unit
/// direction of the soft-thresholded lambda s, or zero when no point of
/// the ball has negative objective.
InnerSolverP1 spca_inner_solver(double alpha);

struct SparsePcaResult {
    Vector component;               // ||X f||_2 = 1
    std::size_t cardinality = 0;
    double explainedVariance = 0.0; // <f, Sigma f> / ||f||_2^2
    double relativeVariance = 0.0;  // explainedVariance / lambda_max(Sigma)
    std::vector<double> lambdaTrace;
    double alpha = 0.0;
    double objective = 0.0;         // spca_functional of the component
    double fixedPointResidual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool fallbackUsed = false;      // some step kept only the largest |mu_i|
};

/// One step of the iteration: mu = X^T X f / ||X f||, lambda = F(f),
/// soft threshold, rescale to ||X g|| = 1. Sets *fallback when the
/// single-coordinate fallback was taken.
Vector spca_step(const DataMatrix& X, const Vector& f, double alpha, bool* fallback = nullptr);

/// Sigma e_j / ||X Sigma e_j|| for the column j of largest norm, lowest
/// index on ties.
Vector default_initialization(const DataMatrix& X);

/// Random standard normal start scaled to ||X f|| = 1.
Vector random_initialization(const DataMatrix& X, std::uint64_t seed);

/// Inverse power method for one sparse principal component. An empty f0
/// selects default_initialization. Throws DomainError for alpha outside
/// [0, 1] and DegenerateStep if an iterate falls into the null space of X.
SparsePcaResult ipm_sparse_pca(const DataMatrix& X, double alpha, const IpmConfig& cfg, Vector f0 = {});

/// Runs ipm_sparse_pca for every alpha (ascending). Candidates per alpha:
/// the previous alpha's solution, the default start and cfg.restarts random
/// starts; the lowest objective wins, earlier candidate on ties.
std::vector<SparsePcaResult> tradeoff_sweep(const DataMatrix& X, const std::vector<double>& alphas,
                                            const IpmConfig& cfg);

}  // namespace nlipm::spca
