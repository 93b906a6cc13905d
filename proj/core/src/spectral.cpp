#include "nlipm/spectral.hpp"

#include "nlipm/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <vector>
#include <random>

namespace nlipm::graph {

Eigen::MatrixXd dense_laplacian(const SparseGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        const auto i = static_cast<Eigen::Index>(e.i);
        const auto j = static_cast<Eigen::Index>(e.j);
        L(i, j) -= e.w;
        L(j, i) -= e.w;
        L(i, i) += e.w;
        L(j, j) += e.w;
    }
    return L;
}

namespace {

Eigen::VectorXd apply_laplacian(const SparseGraph& g, const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (const auto& e : g.edges()) {
        const auto i = static_cast<Eigen::Index>(e.i);
        const auto j = static_cast<Eigen::Index>(e.j);
        const double d = e.w * (x(i) - x(j));
        y(i) += d;
        y(j) -= d;
    }
    return y;
}

void fix_sign(Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) {
            best = i;
        }
    }
    if (v(best) < 0.0) {
        v = -v;
    }
}

void deflate_constant(Eigen::VectorXd& v) {
    v.array() -= v.mean();
    v.normalize();
}

// Shift-invert subspace iteration with Rayleigh-Ritz on the complement of
// the constant vector. The shift keeps L + sigma I positive definite; the
// block size guards against a small gap between the second and third
// eigenvalue.
Eigen::VectorXd shift_invert_subspace(const SparseGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const Eigen::Index block = std::min<Eigen::Index>(n - 1, 6);
    double total = 0.0;
    for (const auto& e : g.edges()) total += 2.0 * e.w;
    const double sigma = 1e-3 * total / static_cast<double>(n);

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(2 * g.edge_count() + g.vertex_count());
    for (Eigen::Index i = 0; i < n; ++i)
        entries.emplace_back(i, i, g.degree(static_cast<Vertex>(i)) + sigma);
    for (const auto& e : g.edges()) {
        entries.emplace_back(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j), -e.w);
        entries.emplace_back(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i), -e.w);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw DomainError("spectral_second_eigenvector: factorization of the shifted Laplacian failed");

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd X(n, block);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = normal(rng);

    auto orthonormalize = [&](Eigen::MatrixXd& M) {
        M.rowwise() -= M.colwise().mean();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
        M = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
        M.rowwise() -= M.colwise().mean();
    };
    orthonormalize(X);
    Eigen::MatrixXd LX(n, block);
    constexpr std::size_t kMaxIters = 10000;
    for (std::size_t it = 0; it < kMaxIters; ++it) {
        Eigen::MatrixXd Y = ldlt.solve(X);
        orthonormalize(Y);
        for (Eigen::Index c = 0; c < block; ++c) LX.col(c) = apply_laplacian(g, Y.col(c));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(Y.transpose() * LX);
        X = Y * ritz.eigenvectors();
        const Eigen::VectorXd x0 = X.col(0);
        const double theta = ritz.eigenvalues()(0);
        if ((LX * ritz.eigenvectors().col(0) - theta * x0).norm() <= 1e-11) break;
    }
    return X.col(0);
}

}  // namespace

SpectralResult spectral_second_eigenvector(const SparseGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2) {
        throw DomainError("spectral_second_eigenvector: need at least two vertices");
    }
    if (!is_connected(g)) {
        throw DisconnectedGraph("spectral_second_eigenvector: graph is disconnected, "
                                "second Laplacian eigenvalue is zero");
    }
    SpectralResult result;
    if (n <= kDenseSpectralLimit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_laplacian(g));
        result.vector = solver.eigenvectors().col(1);
    } else {
        result.vector = shift_invert_subspace(g);
    }
    deflate_constant(result.vector);
    fix_sign(result.vector);
    const Eigen::VectorXd Lv = apply_laplacian(g, result.vector);
    result.eigenvalue = result.vector.dot(Lv);
    result.residual = (Lv - result.eigenvalue * result.vector).norm();
    return result;
}

}  // namespace nlipm::graph
