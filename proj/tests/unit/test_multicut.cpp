#include "nlipm/errors.hpp"
#include "nlipm/knn_graph.hpp"
#include "nlipm/multicut.hpp"
#include "nlipm/oracles/oracles.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace nlipm;
using namespace nlipm::onelap;

namespace {

// Labels agree up to renaming of the clusters.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    std::map<int, int> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [x, fx] = ab.emplace(a[i], b[i]);
        auto [y, fy] = ba.emplace(b[i], a[i]);
        if (x->second != b[i] || y->second != a[i]) return false;
    }
    return true;
}

}  // namespace

TEST(RecursiveMulticut, TwoClustersEqualsSingleThresholdedRun) {
    const auto g = oracles::random_connected_graph(30, 0.15, 21);
    IpmConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 5;
    const auto mc = recursive_multicut(g, 2, cfg);

    const auto runs = ipm_one_laplacian_restarts(g, cfg);
    const auto single = graph::Partition::single(30);
    std::vector<graph::Vertex> all(30);
    for (std::size_t i = 0; i < 30; ++i) all[i] = i;
    double best = 1e300;
    std::vector<bool> bestSet;
    for (const auto& run : runs.runs) {
        const auto th = optimal_threshold_rcut(g, single, 0, all, run.result.eigen.vector);
        if (th.value < best) {
            best = th.value;
            bestSet = th.inSet;
        }
    }
    EXPECT_DOUBLE_EQ(mc.rcut, best);
    EXPECT_EQ(mc.partition.labels(), split_cluster(single, all, bestSet).labels());
    ASSERT_EQ(mc.tree.splits.size(), 1u);
}

TEST(RecursiveMulticut, ThreeGaussianBlobs) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> noise(0.0, 0.3);
    Eigen::MatrixXd points(300, 2);
    std::vector<int> truth(300);
    const double centers[3][2] = {{0.0, 0.0}, {6.0, 0.0}, {3.0, 5.0}};
    for (int i = 0; i < 300; ++i) {
        truth[static_cast<std::size_t>(i)] = i / 100;
        points(i, 0) = centers[i / 100][0] + noise(rng);
        points(i, 1) = centers[i / 100][1] + noise(rng);
    }
    const auto g = graph::build_knn_graph(points, 10);
    IpmConfig cfg;
    cfg.restarts = 3;
    MulticutOptions opts;
    opts.allowComponents = true;
    const auto mc = recursive_multicut(g, 3, cfg, opts);
    EXPECT_EQ(mc.partition.cluster_count(), 3u);
    EXPECT_TRUE(same_partition(mc.partition.labels(), truth));
}

TEST(RecursiveMulticut, ComponentsSplitFirst) {
    // Two disjoint triangles joined to nothing, plus a path of four.
    const graph::SparseGraph g(10, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
                                    {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0},
                                    {6, 7, 1.0}, {7, 8, 0.01}, {8, 9, 1.0}});
    IpmConfig cfg;
    cfg.restarts = 2;
    MulticutOptions opts;
    opts.allowComponents = true;
    const auto mc = recursive_multicut(g, 4, cfg, opts);
    ASSERT_EQ(mc.tree.splits.size(), 3u);
    EXPECT_TRUE(mc.tree.splits[0].componentSplit);
    EXPECT_TRUE(mc.tree.splits[1].componentSplit);
    EXPECT_FALSE(mc.tree.splits[2].componentSplit);
    EXPECT_TRUE(same_partition(mc.partition.labels(), {0, 0, 0, 1, 1, 1, 2, 2, 3, 3}));
    EXPECT_NEAR(mc.rcut, 0.01, 1e-15);
}

TEST(RecursiveMulticut, DisconnectedInputNeedsPermission) {
    const graph::SparseGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    EXPECT_THROW(recursive_multicut(g, 2, IpmConfig{}), DisconnectedGraph);
}

TEST(RecursiveMulticut, InvalidK) {
    const auto g = nlipm::testing::path_graph(4);
    EXPECT_THROW(recursive_multicut(g, 1, IpmConfig{}), DomainError);
    EXPECT_THROW(recursive_multicut(g, 5, IpmConfig{}), DomainError);
}

TEST(RecursiveMulticut, TreeLeavesFormThePartition) {
    const auto g = oracles::random_connected_graph(40, 0.1, 33);
    IpmConfig cfg;
    cfg.restarts = 2;
    const auto mc = recursive_multicut(g, 5, cfg);
    EXPECT_EQ(mc.tree.splits.size(), 4u);
    EXPECT_EQ(mc.tree.leaves().labels(), mc.partition.labels());
    EXPECT_NEAR(mc.rcut, graph::rcut(g, mc.partition), 1e-15);
    for (const auto& s : mc.tree.splits) {
        EXPECT_FALSE(s.left.empty());
        EXPECT_FALSE(s.right.empty());
    }
    // The ratio cut recorded after each split is the one of that partition.
    EXPECT_DOUBLE_EQ(mc.tree.splits.back().rcut, mc.rcut);
}

TEST(RecursiveMulticut, Deterministic) {
    const auto g = oracles::random_connected_graph(30, 0.12, 34);
    IpmConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 9;
    EXPECT_EQ(recursive_multicut(g, 3, cfg).partition.labels(), recursive_multicut(g, 3, cfg).partition.labels());
}
