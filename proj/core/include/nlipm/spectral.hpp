#pragma once

#include "nlipm/graph.hpp"

#include <Eigen/Dense>

namespace nlipm::graph {

struct SpectralResult {
    Eigen::VectorXd vector;  // unit 2-norm, orthogonal to the constant vector
    double eigenvalue = 0.0;
    double residual = 0.0;   // ||L v - lambda v||_2
};

// Graphs up to this many vertices use a dense symmetric eigensolver;
// larger ones use sparse shift-invert subspace iteration.
inline constexpr std::size_t kDenseSpectralLimit = 400;

/// Eigenvector of the unnormalized Laplacian L = D - W for its second
/// smallest eigenvalue. The sign is fixed so that the entry of largest
/// magnitude (lowest index on ties) is positive. Throws DisconnectedGraph
/// when the graph is disconnected, since the second eigenvalue is then 0.
SpectralResult spectral_second_eigenvector(const SparseGraph& g);

/// Dense Laplacian matrix, for oracles and small graphs.
Eigen::MatrixXd dense_laplacian(const SparseGraph& g);

}  // namespace nlipm::graph
