#include "nlipm/oracles/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace nlipm::oracles {

Matrix dense_weights(const graph::SparseGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Matrix W = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        W(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = e.w;
        W(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = e.w;
    }
    return W;
}

double dense_cut(const Matrix& W, const std::vector<bool>& inSet) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < W.rows(); ++i)
        for (Eigen::Index j = 0; j < W.cols(); ++j)
            if (inSet[static_cast<std::size_t>(i)] && !inSet[static_cast<std::size_t>(j)]) c += W(i, j);
    return c;
}

double dense_rcc(const Matrix& W, const std::vector<bool>& inSet) {
    const auto size = static_cast<double>(std::count(inSet.begin(), inSet.end(), true));
    const double rest = static_cast<double>(inSet.size()) - size;
    return dense_cut(W, inSet) / std::min(size, rest);
}

double dense_rcut(const Matrix& W, const std::vector<int>& labels) {
    const int K = *std::max_element(labels.begin(), labels.end()) + 1;
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        std::vector<bool> inSet(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) inSet[i] = labels[i] == k;
        total += dense_cut(W, inSet) / static_cast<double>(std::count(inSet.begin(), inSet.end(), true));
    }
    return total;
}

double dense_f1(const Matrix& W, const Vector& f) {
    double tv = 0.0;
    for (Eigen::Index i = 0; i < W.rows(); ++i)
        for (Eigen::Index j = 0; j < W.cols(); ++j) tv += W(i, j) * std::abs(f[i] - f[j]);
    return 0.5 * tv / f.cwiseAbs().sum();
}

Bipartition brute_force_hrcc(const graph::SparseGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 2 || n > 24) throw std::invalid_argument("brute_force_hrcc: n must lie in [2, 24]");
    const Matrix W = dense_weights(g);
    Bipartition best;
    best.value = std::numeric_limits<double>::infinity();
    // Vertex n - 1 stays outside C, so every bipartition appears once.
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    std::vector<bool> inSet(n);
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        for (std::size_t i = 0; i < n; ++i) inSet[i] = (mask >> i) & 1U;
        const double value = dense_rcc(W, inSet);
        if (value < best.value) {
            best.value = value;
            best.inSet = inSet;
        }
    }
    return best;
}

double threshold_scan(const Matrix& W, const Vector& f) {
    std::set<double> levels(f.data(), f.data() + f.size());
    if (levels.size() < 2) throw std::invalid_argument("threshold_scan: constant vector");
    levels.erase(std::prev(levels.end()));
    double best = std::numeric_limits<double>::infinity();
    for (double t : levels) {
        std::vector<bool> inSet(static_cast<std::size_t>(f.size()));
        for (Eigen::Index i = 0; i < f.size(); ++i) inSet[static_cast<std::size_t>(i)] = f[i] > t;
        best = std::min(best, dense_rcc(W, inSet));
    }
    return best;
}

double projected_gradient_dual(const graph::SparseGraph& g, double lambda, const Vector& v,
                               std::size_t iterations) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    Matrix A = Matrix::Zero(n, m);
    for (Eigen::Index e = 0; e < m; ++e) {
        const auto& ed = g.edges()[static_cast<std::size_t>(e)];
        A(static_cast<Eigen::Index>(ed.i), e) = ed.w;
        A(static_cast<Eigen::Index>(ed.j), e) = -ed.w;
    }
    const double norm2 = Eigen::SelfAdjointEigenSolver<Matrix>(A.transpose() * A).eigenvalues().maxCoeff();
    const double step = 1.0 / (2.0 * norm2);
    const Vector b = lambda * v;
    Vector alpha = Vector::Zero(m);
    for (std::size_t it = 0; it < iterations; ++it) {
        const Vector grad = 2.0 * A.transpose() * (A * alpha - b);
        alpha = (alpha - step * grad).cwiseMax(-1.0).cwiseMin(1.0);
    }
    return (A * alpha - b).squaredNorm();
}

Vector spca_subgradient_oracle(const Vector& mu, double lambda, double alpha, std::size_t iterations) {
    auto objective_grad = [&](const Vector& f) {
        Vector s = -lambda * mu;
        const double nf = f.norm();
        if (nf > 0.0) s += (1.0 - alpha) * f / nf;
        for (Eigen::Index i = 0; i < f.size(); ++i) s[i] += alpha * (f[i] > 0.0 ? 1.0 : (f[i] < 0.0 ? -1.0 : 0.0));
        return s;
    };
    Vector f = mu / mu.norm();
    // Steps c / k shrink the angular error roughly like k^(-c kappa) with
    // kappa the curvature at the optimum, so c must not be too small.
    const double c = 5.0 / std::max(1.0, objective_grad(f).norm());
    for (std::size_t k = 1; k <= iterations; ++k) {
        f -= (c / static_cast<double>(k)) * objective_grad(f);
        const double nf = f.norm();
        if (nf > 1.0) f /= nf;
    }
    return f;
}

DenseEigen dense_eigen(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

graph::SparseGraph random_connected_graph(std::size_t n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    std::vector<graph::Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        used[u][v] = used[v][u] = true;
        edges.push_back({u, v, weight(rng)});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[i][j] && coin(rng) < density) edges.push_back({i, j, weight(rng)});
    return graph::SparseGraph(n, std::move(edges));
}

}  // namespace nlipm::oracles
