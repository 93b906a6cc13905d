#pragma once

#include "nlipm/graph.hpp"

#include <Eigen/Dense>

namespace nlipm::graph {

/// Symmetric k-nearest-neighbor graph over the rows of `points`.
///
/// (i, j) is an edge if j is among the k nearest neighbors of i or vice
/// versa. The directed weight is exp(-4 |x_i - x_j|^2 / sigma_i^2) with
/// sigma_i the distance from i to its k-th neighbor; the undirected
/// weight is the larger of the two directed weights. Neighbor ties are
/// broken by lower index. Throws DomainError if k >= n or k == 0.
SparseGraph build_knn_graph(const Eigen::MatrixXd& points, std::size_t k);

}  // namespace nlipm::graph
