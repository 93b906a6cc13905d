#pragma once

#include "nlipm/graph.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <random>
#include <vector>

namespace nlipm::testing {

inline graph::SparseGraph path_graph(std::size_t n, double w = 1.0) {
    std::vector<graph::Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    return graph::SparseGraph(n, std::move(edges));
}

inline graph::SparseGraph complete_graph(std::size_t n, double w = 1.0) {
    std::vector<graph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, w});
    return graph::SparseGraph(n, std::move(edges));
}

// Triangles {0,1,2} and {3,4,5}, unit weights, bridge 2-3 of weight `bridge`.
inline graph::SparseGraph two_triangles(double bridge = 0.1) {
    return graph::SparseGraph(6, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                  {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}, {2, 3, bridge}});
}

inline std::vector<bool> mask(std::size_t n, std::initializer_list<std::size_t> members) {
    std::vector<bool> m(n, false);
    for (auto v : members) m[v] = true;
    return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(n);
    for (auto& v : x) v = normal(rng);
    return x;
}

// Symmetric positive definite with eigenvalues in [1, 1 + n].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::MatrixXd B(n, n);
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = normal(rng);
    return B * B.transpose() / static_cast<double>(n) + Eigen::MatrixXd::Identity(n, n);
}

}  // namespace nlipm::testing
