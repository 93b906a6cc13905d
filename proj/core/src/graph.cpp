#include "nlipm/graph.hpp"

#include "nlipm/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

namespace nlipm::graph {

SparseGraph::SparseGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.i >= n_ || e.j >= n_) {
            throw std::out_of_range("SparseGraph: vertex id out of range (n = " + std::to_string(n_) + ")");
        }
        if (e.i == e.j) {
            throw std::invalid_argument("SparseGraph: self-loop at vertex " + std::to_string(e.i));
        }
        if (!(e.w > 0.0)) {
            throw std::invalid_argument("SparseGraph: edge weights must be positive");
        }
        if (e.i > e.j) {
            std::swap(e.i, e.j);
        }
    }
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(edges_[a].i, edges_[a].j) < std::tie(edges_[b].i, edges_[b].j);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& a = edges_[order[k - 1]];
        const auto& b = edges_[order[k]];
        if (a.i == b.i && a.j == b.j) {
            throw std::invalid_argument("SparseGraph: repeated edge (" + std::to_string(a.i) + ", " +
                                        std::to_string(a.j) + ")");
        }
    }

    std::vector<std::size_t> count(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++count[e.i + 1];
        ++count[e.j + 1];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        offsets_[v + 1] = offsets_[v] + count[v + 1];
    }
    incidences_.resize(offsets_[n_]);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const auto& e = edges_[k];
        incidences_[cursor[e.i]++] = Incidence{e.j, k, e.w, 1.0};
        incidences_[cursor[e.j]++] = Incidence{e.i, k, e.w, -1.0};
    }
}

double SparseGraph::degree(Vertex v) const {
    double d = 0.0;
    for (const auto& inc : neighbors(v)) {
        d += inc.weight;
    }
    return d;
}

double SparseGraph::max_degree() const {
    double best = 0.0;
    for (Vertex v = 0; v < n_; ++v) {
        best = std::max(best, degree(v));
    }
    return best;
}

double SparseGraph::max_squared_weight_sum() const {
    double best = 0.0;
    for (Vertex v = 0; v < n_; ++v) {
        double s = 0.0;
        for (const auto& inc : neighbors(v)) {
            s += inc.weight * inc.weight;
        }
        best = std::max(best, s);
    }
    return best;
}

SparseGraph SparseGraph::induced_subgraph(std::span<const Vertex> vertices) const {
    std::unordered_map<Vertex, Vertex> local;
    local.reserve(vertices.size());
    for (Vertex k = 0; k < vertices.size(); ++k) {
        if (vertices[k] >= n_) {
            throw std::out_of_range("induced_subgraph: vertex id out of range");
        }
        if (!local.emplace(vertices[k], k).second) {
            throw std::invalid_argument("induced_subgraph: repeated vertex");
        }
    }
    std::vector<Edge> sub;
    for (const auto& e : edges_) {
        auto a = local.find(e.i);
        auto b = local.find(e.j);
        if (a != local.end() && b != local.end()) {
            sub.push_back({a->second, b->second, e.w});
        }
    }
    return SparseGraph(vertices.size(), std::move(sub));
}

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
    int maxLabel = -1;
    for (int l : labels_) {
        if (l < 0) {
            throw std::invalid_argument("Partition: negative label");
        }
        maxLabel = std::max(maxLabel, l);
    }
    std::vector<bool> used(static_cast<std::size_t>(maxLabel + 1), false);
    for (int l : labels_) {
        used[static_cast<std::size_t>(l)] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw std::invalid_argument("Partition: empty cluster");
    }
    clusterCount_ = used.size();
}

Partition Partition::single(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

std::vector<std::vector<Vertex>> Partition::clusters() const {
    std::vector<std::vector<Vertex>> out(clusterCount_);
    for (Vertex v = 0; v < labels_.size(); ++v) {
        out[static_cast<std::size_t>(labels_[v])].push_back(v);
    }
    return out;
}

std::vector<bool> membership(std::size_t n, std::span<const Vertex> members) {
    std::vector<bool> in(n, false);
    for (Vertex v : members) {
        if (v >= n) {
            throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
        }
        in[v] = true;
    }
    return in;
}

double cut(const SparseGraph& g, const std::vector<bool>& inSet) {
    if (inSet.size() != g.vertex_count()) {
        throw std::out_of_range("cut: membership mask has wrong size");
    }
    double total = 0.0;
    for (const auto& e : g.edges()) {
        if (inSet[e.i] != inSet[e.j]) {
            total += e.w;
        }
    }
    return total;
}

double cut(const SparseGraph& g, std::span<const Vertex> members) {
    return cut(g, membership(g.vertex_count(), members));
}

double rcc(const SparseGraph& g, const std::vector<bool>& inSet) {
    const auto size = static_cast<std::size_t>(std::count(inSet.begin(), inSet.end(), true));
    if (size == 0 || size == g.vertex_count()) {
        throw DomainError("rcc: set must be a proper nonempty subset");
    }
    return cut(g, inSet) / static_cast<double>(std::min(size, g.vertex_count() - size));
}

double rcc(const SparseGraph& g, std::span<const Vertex> members) {
    return rcc(g, membership(g.vertex_count(), members));
}

double rcut(const SparseGraph& g, const Partition& p) {
    if (p.vertex_count() != g.vertex_count()) {
        throw std::invalid_argument("rcut: partition size does not match graph");
    }
    const auto& labels = p.labels();
    std::vector<double> cuts(p.cluster_count(), 0.0);
    std::vector<double> sizes(p.cluster_count(), 0.0);
    for (int l : labels) {
        sizes[static_cast<std::size_t>(l)] += 1.0;
    }
    for (const auto& e : g.edges()) {
        const int a = labels[e.i];
        const int b = labels[e.j];
        if (a != b) {
            cuts[static_cast<std::size_t>(a)] += e.w;
            cuts[static_cast<std::size_t>(b)] += e.w;
        }
    }
    double total = 0.0;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        total += cuts[k] / sizes[k];
    }
    return total;
}

std::vector<std::vector<Vertex>> connected_components(const SparseGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<Vertex>> components;
    std::queue<Vertex> frontier;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        std::vector<Vertex> comp;
        seen[root] = true;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex v = frontier.front();
            frontier.pop();
            comp.push_back(v);
            for (const auto& inc : g.neighbors(v)) {
                if (!seen[inc.neighbor]) {
                    seen[inc.neighbor] = true;
                    frontier.push(inc.neighbor);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

bool is_connected(const SparseGraph& g) {
    if (g.vertex_count() <= 1) {
        return true;
    }
    return connected_components(g).size() == 1;
}

}  // namespace nlipm::graph
