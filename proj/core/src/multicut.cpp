#include "nlipm/multicut.hpp"

#include "nlipm/errors.hpp"

#include <limits>
#include <map>
#include <optional>

namespace nlipm::onelap {

Partition ClusterTree::leaves() const {
    std::vector<int> labels(vertexCount, 0);
    for (const auto& s : splits)
        for (Vertex v : s.left) labels[v] = s.child;
    return Partition(std::move(labels));
}

namespace {

struct Candidate {
    std::vector<bool> inSet;  // indexed by position in the cluster
    double level = 0.0;
    bool component = false;
    double eigenvalue = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
};

Candidate eigen_candidate(const SparseGraph& g, const Partition& p, int id,
                          const std::vector<Vertex>& cluster, const IpmConfig& cfg,
                          const InnerOptions& inner) {
    const SparseGraph sub = g.induced_subgraph(cluster);
    const RestartOutcome runs = ipm_one_laplacian_restarts(sub, cfg, true, inner);
    Candidate best;
    double bestValue = std::numeric_limits<double>::infinity();
    for (const auto& run : runs.runs) {
        const auto& eig = run.result.eigen;
        Threshold th = optimal_threshold_rcut(g, p, id, cluster, eig.vector);
        if (th.value < bestValue) {
            bestValue = th.value;
            best.inSet = std::move(th.inSet);
            best.level = th.level;
            best.eigenvalue = eig.eigenvalue;
            best.residual = eig.residual;
            best.iterations = eig.iterations;
        }
    }
    return best;
}

}  // namespace

MulticutResult recursive_multicut(const SparseGraph& g, std::size_t K, const IpmConfig& cfg,
                                  const MulticutOptions& options) {
    cfg.validate();
    const std::size_t n = g.vertex_count();
    if (K < 2) throw DomainError("recursive_multicut: K must be at least 2");
    if (K > n) throw DomainError("recursive_multicut: K exceeds the vertex count");
    if (!options.allowComponents && !graph::is_connected(g))
        throw DisconnectedGraph("recursive_multicut: graph is disconnected; process each connected component");

    MulticutResult out;
    out.tree.vertexCount = n;
    Partition p = Partition::single(n);
    std::map<int, Candidate> cache;

    while (p.cluster_count() < K) {
        const auto clusters = p.clusters();
        std::optional<int> chosen;
        Candidate pick;
        double pickValue = std::numeric_limits<double>::infinity();
        auto consider = [&](int id, Candidate cand) {
            const double value = graph::rcut(g, split_cluster(p, clusters[static_cast<std::size_t>(id)], cand.inSet));
            if (value < pickValue) {
                pickValue = value;
                pick = std::move(cand);
                chosen = id;
            }
        };

        // Disconnected clusters are split along a component before any
        // eigenvector is computed.
        for (std::size_t id = 0; id < clusters.size(); ++id) {
            const auto& cluster = clusters[id];
            if (cluster.size() < 2) continue;
            const auto comps = graph::connected_components(g.induced_subgraph(cluster));
            if (comps.size() < 2) continue;
            for (const auto& comp : comps) {
                Candidate cand;
                cand.component = true;
                cand.inSet.assign(cluster.size(), false);
                for (Vertex local : comp) cand.inSet[local] = true;
                consider(static_cast<int>(id), std::move(cand));
            }
        }
        if (!chosen) {
            for (std::size_t id = 0; id < clusters.size(); ++id) {
                const auto& cluster = clusters[id];
                if (cluster.size() < 2) continue;
                const int cid = static_cast<int>(id);
                auto it = cache.find(cid);
                if (it == cache.end())
                    it = cache.emplace(cid, eigen_candidate(g, p, cid, cluster, cfg, options.inner)).first;
                consider(cid, it->second);
            }
        }
        if (!chosen) throw DomainError("recursive_multicut: no cluster can be split further");

        const auto& cluster = clusters[static_cast<std::size_t>(*chosen)];
        SplitRecord rec;
        rec.parent = *chosen;
        rec.child = static_cast<int>(p.cluster_count());
        for (std::size_t k = 0; k < cluster.size(); ++k)
            (pick.inSet[k] ? rec.left : rec.right).push_back(cluster[k]);
        rec.level = pick.level;
        rec.componentSplit = pick.component;
        rec.eigenvalue = pick.eigenvalue;
        rec.residual = pick.residual;
        rec.iterations = pick.iterations;
        p = split_cluster(p, cluster, pick.inSet);
        rec.rcut = graph::rcut(g, p);
        out.tree.splits.push_back(std::move(rec));
        cache.erase(*chosen);
    }
    out.rcut = graph::rcut(g, p);
    out.partition = std::move(p);
    return out;
}

}  // namespace nlipm::onelap
