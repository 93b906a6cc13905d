#pragma once

#include "nlipm/functionals.hpp"
#include "nlipm/graph.hpp"

#include <vector>

namespace nlipm::onelap {

using graph::Partition;
using graph::SparseGraph;
using graph::Vertex;

struct Threshold {
    std::vector<bool> inSet;  // C_t = {i : f_i > t}
    double level = 0.0;       // t
    double value = 0.0;       // criterion value of the split
    std::size_t size = 0;     // |C_t|
};

/// Optimal thresholding for the ratio Cheeger cut. Scans the level sets
/// at the distinct values of f in O(E + n log n). Ties prefer the more
/// balanced split, then the smaller level. The reported value is
/// recomputed with graph::rcc on the chosen set. Throws DomainError for
/// constant f.
Threshold optimal_threshold(const SparseGraph& g, const Vector& f);

/// Level set of f on `cluster` (vertices of the current cluster, with f
/// indexed locally) minimizing the multiway ratio cut of `current` after
/// splitting that cluster into {f > t} and the rest. inSet is indexed by
/// local position. The reported value is the full ratio cut recomputed
/// with graph::rcut.
Threshold optimal_threshold_rcut(const SparseGraph& g, const Partition& current, int clusterId,
                                 const std::vector<Vertex>& cluster, const Vector& f);

/// Partition with `cluster`'s vertices selected by `inSet` moved to a new
/// cluster id.
Partition split_cluster(const Partition& current, const std::vector<Vertex>& cluster,
                        const std::vector<bool>& inSet);

}  // namespace nlipm::onelap
