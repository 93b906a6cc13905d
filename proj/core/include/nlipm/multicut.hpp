#pragma once

#include "nlipm/graph.hpp"
#include "nlipm/ipm.hpp"
#include "nlipm/one_laplacian.hpp"

#include <vector>

namespace nlipm::onelap {

struct SplitRecord {
    int parent = 0;                // cluster id that was split; keeps the right part
    int child = 0;                 // new cluster id of the left part
    std::vector<Vertex> left;      // vertices with f > level
    std::vector<Vertex> right;
    double level = 0.0;
    double rcut = 0.0;             // ratio cut of the partition after this split
    bool componentSplit = false;   // split along a connected component, no eigenvector
    double eigenvalue = 0.0;       // of the chosen run; 0 for component splits
    double residual = 0.0;
    std::size_t iterations = 0;
};

struct ClusterTree {
    std::size_t vertexCount = 0;
    std::vector<SplitRecord> splits;

    /// Partition given by the leaves after all splits.
    Partition leaves() const;
};

struct MulticutOptions {
    bool allowComponents = false;  // accept a disconnected input graph
    InnerOptions inner;
};

struct MulticutResult {
    Partition partition;
    ClusterTree tree;
    double rcut = 0.0;
};

/// Recursive splitting into K clusters. Each round computes, for every
/// cluster, the eigenvector of its induced subgraph (cfg.restarts random
/// starts plus a spectral start) and the threshold minimizing the global
/// ratio cut, then commits the single best split. A cluster whose induced
/// subgraph is disconnected is split along a component first. Throws
/// DisconnectedGraph for a disconnected g unless allowComponents, and
/// DomainError when fewer than K clusters can be formed.
MulticutResult recursive_multicut(const SparseGraph& g, std::size_t K, const IpmConfig& cfg,
                                  const MulticutOptions& options = {});

}  // namespace nlipm::onelap
