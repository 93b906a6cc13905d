#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nlipm::graph {

using Vertex = std::size_t;

// Undirected edge, stored once with i < j.
struct Edge {
    Vertex i;
    Vertex j;
    double w;
};

// One entry of a vertex's neighbor list. `orientation` is +1 if the
// owning vertex is the edge's first endpoint and -1 otherwise, so that
// (A alpha)_v = sum over incidences of orientation * weight * alpha[edge].
struct Incidence {
    Vertex neighbor;
    std::size_t edge;
    double weight;
    double orientation;
};

/// Symmetric weighted undirected graph without self-loops. Immutable after
/// construction and safe for concurrent reads.
class SparseGraph {
public:
    SparseGraph() = default;

    /// Edges may be given in either orientation; they are stored with
    /// i < j. Throws std::out_of_range for a vertex id >= n and
    /// std::invalid_argument for self-loops, non-positive weights or a
    /// repeated vertex pair.
    SparseGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Incidence> neighbors(Vertex v) const {
        return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
    }

    double degree(Vertex v) const;
    double max_degree() const;

    /// max_r sum_s w_rs^2, the row bound entering the dual Lipschitz constant.
    double max_squared_weight_sum() const;

    /// Subgraph induced by `vertices`; local vertex k corresponds to
    /// vertices[k].
    SparseGraph induced_subgraph(std::span<const Vertex> vertices) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> incidences_;
};

/// Per-vertex cluster labels in [0, K); every cluster nonempty.
class Partition {
public:
    Partition() = default;

    /// Throws std::invalid_argument if labels are negative or some id in
    /// [0, max label] is unused.
    explicit Partition(std::vector<int> labels);

    // All vertices in one cluster.
    static Partition single(std::size_t n);

    const std::vector<int>& labels() const noexcept { return labels_; }
    std::size_t cluster_count() const noexcept { return clusterCount_; }
    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::vector<std::vector<Vertex>> clusters() const;

private:
    std::vector<int> labels_;
    std::size_t clusterCount_ = 0;
};

std::vector<bool> membership(std::size_t n, std::span<const Vertex> members);

/// Total weight of edges with exactly one endpoint in C. Throws
/// std::out_of_range for vertices outside the graph.
double cut(const SparseGraph& g, std::span<const Vertex> members);
double cut(const SparseGraph& g, const std::vector<bool>& inSet);

/// Ratio Cheeger cut cut(C, V\C) / min(|C|, |V\C|). Throws DomainError if
/// C is empty or all of V.
double rcc(const SparseGraph& g, std::span<const Vertex> members);
double rcc(const SparseGraph& g, const std::vector<bool>& inSet);

/// Multiway ratio cut sum_k cut(C_k, V\C_k) / |C_k|.
double rcut(const SparseGraph& g, const Partition& p);

bool is_connected(const SparseGraph& g);

/// Connected components, each sorted ascending, ordered by smallest vertex.
std::vector<std::vector<Vertex>> connected_components(const SparseGraph& g);

}  // namespace nlipm::graph
