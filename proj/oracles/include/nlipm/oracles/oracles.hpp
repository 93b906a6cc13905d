#pragma once

// Slow, independent reference computations. Nothing here reuses the
// incremental or iterative code paths of nlipm::core.

#include "nlipm/functionals.hpp"
#include "nlipm/graph.hpp"

#include <cstdint>
#include <vector>

namespace nlipm::oracles {

/// Dense symmetric weight matrix.
Matrix dense_weights(const graph::SparseGraph& g);

/// Double sum over i in C, j not in C of W_ij.
double dense_cut(const Matrix& W, const std::vector<bool>& inSet);
double dense_rcc(const Matrix& W, const std::vector<bool>& inSet);
double dense_rcut(const Matrix& W, const std::vector<int>& labels);

/// (1/2) sum_ij W_ij |f_i - f_j| / ||f||_1.
double dense_f1(const Matrix& W, const Vector& f);

struct Bipartition {
    double value = 0.0;
    std::vector<bool> inSet;
};

/// Minimum ratio Cheeger cut over all 2^(n-1) - 1 bipartitions. Throws
/// std::invalid_argument for n > 24.
Bipartition brute_force_hrcc(const graph::SparseGraph& g);

/// Minimum of dense_rcc over the level sets {f > t} at every distinct
/// value t of f except the largest.
double threshold_scan(const Matrix& W, const Vector& f);

/// Plain projected gradient on min ||A alpha - lambda v||^2 over the box,
/// with step 1 / (2 ||A||^2) from a dense spectral norm. Returns the final
/// objective.
double projected_gradient_dual(const graph::SparseGraph& g, double lambda, const Vector& v,
                               std::size_t iterations);

/// Projected subgradient descent on
///   (1 - alpha) ||f||_2 + alpha ||f||_1 - lambda <f, mu>
/// over the unit ball, started at mu / ||mu|| with steps c / k, c = 5 / max(1, ||g_0||). Returns
/// the last iterate.
Vector spca_subgradient_oracle(const Vector& mu, double lambda, double alpha, std::size_t iterations);

/// All eigenpairs of a dense symmetric matrix, ascending.
struct DenseEigen {
    Vector values;
    Matrix vectors;
};
DenseEigen dense_eigen(const Matrix& A);

/// Connected graph on n vertices: a random spanning tree plus each other
/// pair with probability `density`, weights uniform in [0.1, 1].
graph::SparseGraph random_connected_graph(std::size_t n, double density, std::uint64_t seed);

}  // namespace nlipm::oracles
