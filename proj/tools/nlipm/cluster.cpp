#include "commands.hpp"
#include "manifest.hpp"

#include "nlipm/dual_fista.hpp"
#include "nlipm/io.hpp"
#include "nlipm/knn_graph.hpp"
#include "nlipm/multicut.hpp"
#include "nlipm/one_laplacian.hpp"
#include "nlipm/spectral.hpp"
#include "nlipm/threshold.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace nlipm::cli {

namespace {

using nlohmann::json;
using graph::Partition;
using graph::SparseGraph;

struct ClusterOptions {
    std::string graph;
    std::string points;
    std::size_t knn = 0;
    std::size_t k = 2;
    std::string method = "ipm";
    std::size_t restarts = 10;
    bool spectralInit = true;
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
    std::string out;
    bool allowComponents = false;
};

// Iteration cap of the accurate solve that certifies the reported vector.
constexpr std::size_t kCertificationIters = 20000;

json split_json(const onelap::SplitRecord& s) {
    return {{"parent", s.parent},         {"child", s.child},
            {"left", s.left},             {"right", s.right},
            {"level", s.level},           {"rcut", s.rcut},
            {"component_split", s.componentSplit}, {"eigenvalue", s.eigenvalue},
            {"residual", s.residual},     {"iterations", s.iterations}};
}

json tree_json(const onelap::ClusterTree& tree) {
    json splits = json::array();
    for (const auto& s : tree.splits) splits.push_back(split_json(s));
    return {{"vertex_count", tree.vertexCount}, {"splits", splits}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string partition_csv(const Partition& p) {
    std::ostringstream out;
    io::write_partition_csv(out, p);
    return out.str();
}

Partition two_way(const std::vector<bool>& inSet) {
    std::vector<int> labels(inSet.size());
    for (std::size_t i = 0; i < inSet.size(); ++i) labels[i] = inSet[i] ? 1 : 0;
    return Partition(std::move(labels));
}

onelap::ClusterTree single_split(const std::vector<bool>& inSet, double level, double rcut, double eigenvalue,
                                 double residual, std::size_t iterations, bool component) {
    onelap::ClusterTree tree;
    tree.vertexCount = inSet.size();
    onelap::SplitRecord s;
    s.parent = 0;
    s.child = 1;
    for (std::size_t i = 0; i < inSet.size(); ++i) (inSet[i] ? s.left : s.right).push_back(i);
    s.level = level;
    s.rcut = rcut;
    s.componentSplit = component;
    s.eigenvalue = eigenvalue;
    s.residual = residual;
    s.iterations = iterations;
    tree.splits.push_back(std::move(s));
    return tree;
}

// Residual of the eigenvector condition after an accurate dual solve at f.
double certify(const SparseGraph& g, const onelap::OneLaplacianResult& r) {
    const Vector& f = r.eigen.vector;
    const double lambda = r.eigen.eigenvalue;
    onelap::FistaOptions opts;
    opts.tol = 1e-12 * std::max(lambda, 1e-300);
    opts.maxIters = kCertificationIters;
    const auto sol = onelap::fista_inner(g, lambda, onelap::balanced_sign(f), r.dual, opts);
    return onelap::certify_eigenvector(g, f, lambda, sol.dual);
}

int run_cluster(const ClusterOptions& o) {
    if (o.graph.empty() == o.points.empty()) throw CliError(kInputError, "give exactly one of --graph and --points");
    if (!o.points.empty() && o.knn == 0) throw CliError(kInputError, "--points requires --knn");
    if (!o.graph.empty() && o.knn != 0) throw CliError(kInputError, "--knn applies to --points only");
    if (o.k < 2) throw CliError(kInputError, "--k must be at least 2");
    if (o.method == "spectral" && o.k != 2) throw CliError(kInputError, "--method spectral supports --k 2 only");

    const std::filesystem::path outDir(o.out);
    Manifest manifest("cluster");
    manifest.set_seed(o.seed);
    auto& params = manifest.parameters();
    params = {{"graph", o.graph}, {"points", o.points}, {"knn", o.knn},
              {"k", o.k}, {"method", o.method}, {"restarts", o.restarts},
              {"spectral_init", o.spectralInit}, {"epsilon", o.epsilon}, {"seed", o.seed},
              {"allow_components", o.allowComponents}};

    manifest.start_phase("read");
    SparseGraph g;
    if (!o.graph.empty()) {
        g = io::read_edge_list_file(o.graph);
        manifest.add_input(o.graph);
    } else {
        std::ifstream in(o.points);
        if (!in) throw CliError(kInputError, "cannot open " + o.points);
        const Matrix pts = io::read_points_csv(in);
        manifest.add_input(o.points);
        manifest.end_phase();
        manifest.start_phase("knn_graph");
        g = graph::build_knn_graph(pts, o.knn);
    }
    manifest.end_phase();
    if (g.vertex_count() < o.k) throw CliError(kInputError, "--k exceeds the vertex count");
    const bool connected = graph::is_connected(g);
    if (!connected && !o.allowComponents)
        throw CliError(kInputError, "graph is disconnected; pass --allow-components to split along components");

    IpmConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    if (o.method == "ipm" && o.restarts == 0 && !o.spectralInit)
        throw CliError(kInputError, "--restarts 0 together with --no-spectral-init leaves no run");

    json metrics;
    Partition partition;
    onelap::ClusterTree tree;
    int code = kOk;

    manifest.start_phase("solve");
    if (o.k > 2 || !connected) {
        onelap::MulticutOptions mo;
        mo.allowComponents = o.allowComponents;
        const auto mc = onelap::recursive_multicut(g, o.k, cfg, mo);
        partition = mc.partition;
        tree = mc.tree;
        metrics["rcut"] = mc.rcut;
        if (o.k == 2) {
            std::vector<bool> inSet(g.vertex_count());
            for (std::size_t i = 0; i < inSet.size(); ++i) inSet[i] = partition.labels()[i] == 1;
            metrics["rcc"] = graph::rcc(g, inSet);
        }
        json splits = json::array();
        for (const auto& s : mc.tree.splits)
            splits.push_back({{"eigenvalue", s.eigenvalue}, {"residual", s.residual}, {"iterations", s.iterations},
                              {"component_split", s.componentSplit}});
        metrics["splits"] = splits;
    } else if (o.method == "spectral") {
        const auto sp = graph::spectral_second_eigenvector(g);
        const auto th = onelap::optimal_threshold(g, sp.vector);
        partition = two_way(th.inSet);
        tree = single_split(th.inSet, th.level, graph::rcut(g, partition), sp.eigenvalue, sp.residual, 0, false);
        metrics = {{"rcc", th.value}, {"rcut", graph::rcut(g, partition)}, {"eigenvalue", sp.eigenvalue},
                   {"residual", sp.residual}, {"iterations", 0}};
    } else {
        const auto outcome = onelap::ipm_one_laplacian_restarts(g, cfg, o.spectralInit);
        const auto& best = outcome.runs[outcome.best];
        const auto& th = best.result.bestThreshold;
        partition = two_way(th.inSet);
        manifest.end_phase();
        manifest.start_phase("certify");
        const double residual = certify(g, best.result);
        std::size_t inner = 0;
        json runs = json::array();
        for (const auto& run : outcome.runs) {
            std::size_t it = 0;
            for (const auto& s : run.result.innerSolves) it += s.iterations;
            inner += it;
            runs.push_back({{"spectral", run.spectral}, {"seed", run.seed}, {"rcc", run.result.bestThreshold.value},
                            {"final_rcc", run.result.finalThreshold.value},
                            {"eigenvalue", run.result.eigen.eigenvalue},
                            {"outer_iterations", run.result.eigen.iterations}, {"inner_iterations", it},
                            {"converged", run.result.eigen.converged}});
        }
        tree = single_split(th.inSet, th.level, graph::rcut(g, partition), best.result.eigen.eigenvalue, residual,
                            best.result.eigen.iterations, false);
        metrics = {{"rcc", th.value},
                   {"rcut", graph::rcut(g, partition)},
                   {"eigenvalue", best.result.eigen.eigenvalue},
                   {"residual", residual},
                   {"iterations", best.result.eigen.iterations},
                   {"inner_iterations", inner},
                   {"best_run", outcome.best},
                   {"converged", best.result.eigen.converged},
                   {"runs", runs}};
        if (o.spectralInit) metrics["spectral_rcc"] = outcome.spectralThreshold.value;
        if (!best.result.eigen.converged) {
            std::cerr << "nlipm cluster: best run did not converge within the iteration caps\n";
            code = kNumericalFailure;
        }
    }
    manifest.end_phase();
    metrics["vertices"] = g.vertex_count();
    metrics["edges"] = g.edge_count();
    metrics["clusters"] = partition.cluster_count();

    prepare_output_dir(outDir);
    manifest.write_output(outDir, "partition.csv", partition_csv(partition));
    manifest.write_output(outDir, "metrics.json", dump(metrics));
    manifest.write_output(outDir, "tree.json", dump(tree_json(tree)));
    manifest.save(outDir);
    if (metrics.contains("rcc"))
        std::cout << "rcc " << io::format_double(metrics["rcc"].get<double>()) << '\n';
    std::cout << "rcut " << io::format_double(metrics["rcut"].get<double>()) << '\n';
    return code;
}

}  // namespace

void add_cluster_command(CLI::App& app, std::vector<Command>& commands) {
    auto opts = std::make_shared<ClusterOptions>();
    auto* sub = app.add_subcommand("cluster", "Partition a graph with the 1-Laplacian or the standard spectral method");
    sub->add_option("--graph", opts->graph, "Edge list: i j w per line, 0-based")->check(CLI::ExistingFile);
    sub->add_option("--points", opts->points, "Numeric CSV, one point per row")->check(CLI::ExistingFile);
    sub->add_option("--knn", opts->knn, "Neighbors of the symmetric kNN graph built from --points");
    sub->add_option("--k", opts->k, "Number of clusters")->capture_default_str();
    sub->add_option("--method", opts->method, "ipm or spectral")
        ->check(CLI::IsMember({"ipm", "spectral"}))
        ->capture_default_str();
    sub->add_option("--restarts", opts->restarts, "Random starts")->capture_default_str();
    sub->add_flag("--spectral-init,!--no-spectral-init", opts->spectralInit,
                  "Add a run started from the thresholded second Laplacian eigenvector")
        ->capture_default_str();
    sub->add_option("--epsilon", opts->epsilon, "Relative eigenvalue change that stops the iteration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    sub->add_option("--out", opts->out, "Output directory")->required();
    sub->add_flag("--allow-components", opts->allowComponents, "Accept a disconnected graph");
    commands.push_back({sub, [opts] { return run_cluster(*opts); }});
}

}  // namespace nlipm::cli
