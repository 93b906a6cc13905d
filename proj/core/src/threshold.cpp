#include "nlipm/threshold.hpp"

#include "nlipm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nlipm::onelap {

namespace {

constexpr double kTieTolerance = 1e-12;

// Order of vertices by descending value, ties by index.
std::vector<std::size_t> descending_order(const Vector& f) {
    std::vector<std::size_t> order(static_cast<std::size_t>(f.size()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return f[static_cast<Eigen::Index>(a)] > f[static_cast<Eigen::Index>(b)];
    });
    return order;
}

struct Candidate {
    double value;
    std::size_t balance;  // min(|C|, |V \ C|)
    double level;
    std::size_t prefix;   // number of vertices in C along the order
};

bool better(const Candidate& a, const Candidate& b) {
    const double tol = kTieTolerance * std::max({1.0, std::abs(a.value), std::abs(b.value)});
    if (a.value < b.value - tol) return true;
    if (a.value > b.value + tol) return false;
    if (a.balance != b.balance) return a.balance > b.balance;
    return a.level < b.level;
}

// Walks the level sets of f in descending order. `visit(v)` adds vertex v
// to C; `score(size, level)` is called once per proper level set.
template <typename Add, typename Score>
std::size_t scan_levels(const Vector& f, const std::vector<std::size_t>& order, Add&& add,
                        Score&& score) {
    const std::size_t n = order.size();
    std::size_t pos = 0;
    std::size_t levels = 0;
    while (pos < n) {
        const double value = f[static_cast<Eigen::Index>(order[pos])];
        while (pos < n && f[static_cast<Eigen::Index>(order[pos])] == value) add(order[pos++]);
        if (pos == n) break;
        // C = {f > t} for t equal to the next distinct value.
        score(pos, f[static_cast<Eigen::Index>(order[pos])]);
        ++levels;
    }
    return levels;
}

}  // namespace

Threshold optimal_threshold(const SparseGraph& g, const Vector& f) {
    const std::size_t n = g.vertex_count();
    if (static_cast<std::size_t>(f.size()) != n)
        throw std::invalid_argument("optimal_threshold: vector size must equal vertex count");
    const auto order = descending_order(f);

    std::vector<bool> inSet(n, false);
    double cutValue = 0.0;
    bool found = false;
    Candidate best{};
    auto add = [&](std::size_t v) {
        for (const auto& inc : g.neighbors(v)) cutValue += inSet[inc.neighbor] ? -inc.weight : inc.weight;
        inSet[v] = true;
    };
    auto score = [&](std::size_t size, double level) {
        const std::size_t balance = std::min(size, n - size);
        const Candidate c{std::max(cutValue, 0.0) / static_cast<double>(balance), balance, level, size};
        if (!found || better(c, best)) {
            best = c;
            found = true;
        }
    };
    scan_levels(f, order, add, score);
    if (!found) throw DomainError("optimal_threshold: vector is constant");

    Threshold out;
    out.inSet.assign(n, false);
    for (std::size_t k = 0; k < best.prefix; ++k) out.inSet[order[k]] = true;
    out.level = best.level;
    out.size = best.prefix;
    out.value = graph::rcc(g, out.inSet);
    return out;
}

Threshold optimal_threshold_rcut(const SparseGraph& g, const Partition& current, int clusterId,
                                 const std::vector<Vertex>& cluster, const Vector& f) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = cluster.size();
    if (current.vertex_count() != n)
        throw std::invalid_argument("optimal_threshold_rcut: partition size must equal vertex count");
    if (static_cast<std::size_t>(f.size()) != m)
        throw std::invalid_argument("optimal_threshold_rcut: vector size must equal cluster size");
    const auto& labels = current.labels();

    // Cut and size of every cluster give the part of the ratio cut that the
    // split leaves unchanged.
    std::vector<double> clusterCut(current.cluster_count(), 0.0);
    std::vector<std::size_t> clusterSize(current.cluster_count(), 0);
    for (std::size_t v = 0; v < n; ++v) ++clusterSize[static_cast<std::size_t>(labels[v])];
    for (const auto& e : g.edges()) {
        if (labels[e.i] != labels[e.j]) {
            clusterCut[static_cast<std::size_t>(labels[e.i])] += e.w;
            clusterCut[static_cast<std::size_t>(labels[e.j])] += e.w;
        }
    }
    const auto c = static_cast<std::size_t>(clusterId);
    if (c >= current.cluster_count() || clusterSize[c] != m)
        throw std::invalid_argument("optimal_threshold_rcut: cluster does not match partition");
    double others = 0.0;
    for (std::size_t k = 0; k < clusterCut.size(); ++k)
        if (k != c) others += clusterCut[k] / static_cast<double>(clusterSize[k]);
    const double external = clusterCut[c];

    std::vector<long> local(n, -1);
    for (std::size_t k = 0; k < m; ++k) {
        if (labels[cluster[k]] != clusterId)
            throw std::invalid_argument("optimal_threshold_rcut: vertex outside cluster");
        local[cluster[k]] = static_cast<long>(k);
    }

    const auto order = descending_order(f);
    std::vector<bool> inSet(m, false);
    double internalCut = 0.0;
    double externalA = 0.0;
    bool found = false;
    Candidate best{};
    auto add = [&](std::size_t k) {
        for (const auto& inc : g.neighbors(cluster[k])) {
            const long l = local[inc.neighbor];
            if (l < 0)
                externalA += inc.weight;
            else
                internalCut += inSet[static_cast<std::size_t>(l)] ? -inc.weight : inc.weight;
        }
        inSet[k] = true;
    };
    auto score = [&](std::size_t size, double level) {
        const double cutInt = std::max(internalCut, 0.0);
        const double cutA = cutInt + externalA;
        const double cutB = cutInt + std::max(external - externalA, 0.0);
        const double value = others + cutA / static_cast<double>(size) +
                             cutB / static_cast<double>(m - size);
        const Candidate cand{value, std::min(size, m - size), level, size};
        if (!found || better(cand, best)) {
            best = cand;
            found = true;
        }
    };
    scan_levels(f, order, add, score);
    if (!found) throw DomainError("optimal_threshold_rcut: vector is constant");

    Threshold out;
    out.inSet.assign(m, false);
    for (std::size_t k = 0; k < best.prefix; ++k) out.inSet[order[k]] = true;
    out.level = best.level;
    out.size = best.prefix;
    out.value = graph::rcut(g, split_cluster(current, cluster, out.inSet));
    return out;
}

Partition split_cluster(const Partition& current, const std::vector<Vertex>& cluster,
                        const std::vector<bool>& inSet) {
    if (inSet.size() != cluster.size())
        throw std::invalid_argument("split_cluster: mask size must equal cluster size");
    auto labels = current.labels();
    const int fresh = static_cast<int>(current.cluster_count());
    for (std::size_t k = 0; k < cluster.size(); ++k)
        if (inSet[k]) labels[cluster[k]] = fresh;
    return Partition(std::move(labels));
}

}  // namespace nlipm::onelap
