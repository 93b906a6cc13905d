#include "nlipm/knn_graph.hpp"

#include "nlipm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace nlipm::graph {

namespace {

double directed_weight(double squaredDistance, double sigma) {
    if (sigma == 0.0) {
        // All k neighbors coincide with the point itself.
        return 1.0;
    }
    return std::exp(-4.0 * squaredDistance / (sigma * sigma));
}

}  // namespace

SparseGraph build_knn_graph(const Eigen::MatrixXd& points, std::size_t k) {
    const auto n = static_cast<std::size_t>(points.rows());
    if (k == 0 || k >= n) {
        throw DomainError("build_knn_graph: need 1 <= k < n");
    }
    // Column-major copy with one point per column keeps the distance sweep contiguous.
    const Eigen::MatrixXd cols = points.transpose();

    std::vector<std::vector<std::pair<double, std::size_t>>> nearest(n);
    std::vector<double> sigma(n);
    std::vector<std::pair<double, std::size_t>> candidates(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd d2 =
            (cols.colwise() - cols.col(static_cast<Eigen::Index>(i))).colwise().squaredNorm().transpose();
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                candidates[c++] = {d2(static_cast<Eigen::Index>(j)), j};
            }
        }
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                          candidates.end());
        nearest[i].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
        sigma[i] = std::sqrt(nearest[i].back().first);
    }

    std::map<std::pair<std::size_t, std::size_t>, double> weights;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [d2, j] : nearest[i]) {
            const double w = directed_weight(d2, sigma[i]);
            auto key = std::minmax(i, j);
            auto [it, inserted] = weights.emplace(key, w);
            if (!inserted) {
                it->second = std::max(it->second, w);
            }
        }
    }
    std::vector<Edge> edges;
    edges.reserve(weights.size());
    for (const auto& [key, w] : weights) {
        edges.push_back({key.first, key.second, w});
    }
    return SparseGraph(n, std::move(edges));
}

}  // namespace nlipm::graph
