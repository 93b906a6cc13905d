#include "commands.hpp"
#include "manifest.hpp"

#include "nlipm/io.hpp"
#include "nlipm/knn_graph.hpp"
#include "nlipm/one_laplacian.hpp"
#include "nlipm/seeding.hpp"
#include "nlipm/two_moons.hpp"

#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>

namespace nlipm::cli {

namespace {

using graph::Partition;

struct GenOptions {
    graph::TwoMoonsSpec spec;
    std::string out;
};

struct ReproduceOptions {
    std::size_t draws = 20;
    std::size_t n = 2000;
    std::size_t knn = 10;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenOptions& o) {
    o.spec.validate();
    if (o.spec.kNeighbors >= o.spec.n) throw CliError(kInputError, "--knn must be below --n");
    Manifest manifest("gen-two-moons");
    manifest.set_seed(o.spec.seed);
    manifest.parameters() = {{"n", o.spec.n},     {"sigma", o.spec.noiseSigma}, {"knn", o.spec.kNeighbors},
                             {"seed", o.spec.seed}, {"dimension", o.spec.dimension}, {"radius", o.spec.radius}};
    manifest.start_phase("generate");
    const auto moons = graph::generate_two_moons(o.spec);
    manifest.end_phase();
    manifest.start_phase("knn_graph");
    const auto g = graph::build_knn_graph(moons.points, o.spec.kNeighbors);
    manifest.end_phase();

    const std::filesystem::path dir(o.out);
    prepare_output_dir(dir);
    std::ostringstream points, labels, edges;
    io::write_points_csv(points, moons.points);
    io::write_partition_csv(labels, moons.labels);
    io::write_edge_list(edges, g);
    manifest.write_output(dir, "points.csv", points.str());
    manifest.write_output(dir, "labels.csv", labels.str());
    manifest.write_output(dir, "graph.tsv", edges.str());
    manifest.save(dir);
    return kOk;
}

// Fraction of vertices on the wrong side, under the better of the two
// label matchings.
double error_rate(const std::vector<bool>& inSet, const Partition& truth) {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < inSet.size(); ++i) wrong += (inSet[i] ? 1 : 0) != truth.labels()[i];
    const double e = static_cast<double>(wrong) / static_cast<double>(inSet.size());
    return std::min(e, 1.0 - e);
}

struct Stats {
    double mean = 0.0, sd = 0.0;
};

Stats stats(const std::vector<double>& x) {
    Stats s;
    for (double v : x) s.mean += v;
    s.mean /= static_cast<double>(x.size());
    if (x.size() > 1) {
        for (double v : x) s.sd += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(s.sd / static_cast<double>(x.size() - 1));
    }
    return s;
}

int run_reproduce(const ReproduceOptions& o) {
    if (o.draws == 0) throw CliError(kInputError, "--draws must be positive");
    Manifest manifest("reproduce-two-moons");
    manifest.set_seed(o.seed);
    manifest.parameters() = {{"draws", o.draws}, {"n", o.n}, {"knn", o.knn}, {"restarts", o.restarts}, {"seed", o.seed}};

    std::vector<double> ipmRcc, specRcc, ipmErr, specErr;
    std::size_t violations = 0;
    std::ostringstream perDraw;
    perDraw << "draw,data_seed,ipm_rcc,ipm_error,spectral_rcc,spectral_error,spectral_init_rcc\n";
    manifest.start_phase("draws");
    for (std::size_t d = 0; d < o.draws; ++d) {
        graph::TwoMoonsSpec spec;
        spec.n = o.n;
        spec.kNeighbors = o.knn;
        spec.seed = derive_seed(o.seed, 2 * d);
        const auto moons = graph::generate_two_moons(spec);
        const auto g = graph::build_knn_graph(moons.points, o.knn);
        IpmConfig cfg;
        cfg.restarts = o.restarts;
        cfg.seed = derive_seed(o.seed, 2 * d + 1);
        const auto outcome = onelap::ipm_one_laplacian_restarts(g, cfg, true);
        const auto& best = outcome.runs[outcome.best].result.bestThreshold;
        const double init = outcome.runs.back().result.bestThreshold.value;
        if (init > outcome.spectralThreshold.value) ++violations;
        ipmRcc.push_back(best.value);
        ipmErr.push_back(error_rate(best.inSet, moons.labels));
        specRcc.push_back(outcome.spectralThreshold.value);
        specErr.push_back(error_rate(outcome.spectralThreshold.inSet, moons.labels));
        perDraw << d << ',' << spec.seed << ',' << io::format_double(ipmRcc.back()) << ','
                << io::format_double(ipmErr.back()) << ',' << io::format_double(specRcc.back()) << ','
                << io::format_double(specErr.back()) << ',' << io::format_double(init) << '\n';
        std::cerr << "draw " << d + 1 << "/" << o.draws << ": ipm " << ipmRcc.back() << " spectral "
                  << specRcc.back() << '\n';
    }
    manifest.end_phase();

    std::ostringstream summary;
    summary << "method,mean_rcc,sd_rcc,mean_error,sd_error\n";
    const auto ir = stats(ipmRcc), ie = stats(ipmErr), sr = stats(specRcc), se = stats(specErr);
    summary << "ipm," << io::format_double(ir.mean) << ',' << io::format_double(ir.sd) << ','
            << io::format_double(ie.mean) << ',' << io::format_double(ie.sd) << '\n';
    summary << "spectral," << io::format_double(sr.mean) << ',' << io::format_double(sr.sd) << ','
            << io::format_double(se.mean) << ',' << io::format_double(se.sd) << '\n';

    const std::filesystem::path dir(o.out);
    prepare_output_dir(dir);
    manifest.write_output(dir, "per_draw.csv", perDraw.str());
    manifest.write_output(dir, "summary.csv", summary.str());
    manifest.parameters()["spectral_init_violations"] = violations;
    manifest.save(dir);
    std::cout << summary.str();
    if (violations) {
        std::cerr << "nlipm reproduce-two-moons: " << violations
                  << " draws where the spectral-init run lost to the spectral threshold\n";
        return kNumericalFailure;
    }
    return kOk;
}

}  // namespace

void add_two_moons_commands(CLI::App& app, std::vector<Command>& commands) {
    auto gen = std::make_shared<GenOptions>();
    auto* g = app.add_subcommand("gen-two-moons", "Write a two-moons sample, its labels and its kNN graph");
    g->add_option("--n", gen->spec.n, "Number of points")->capture_default_str();
    g->add_option("--sigma", gen->spec.noiseSigma, "Noise standard deviation per coordinate")->capture_default_str();
    g->add_option("--knn", gen->spec.kNeighbors, "Neighbors of the kNN graph")->capture_default_str();
    g->add_option("--dimension", gen->spec.dimension, "Ambient dimension")->capture_default_str();
    g->add_option("--seed", gen->spec.seed, "Seed")->capture_default_str();
    g->add_option("--out", gen->out, "Output directory")->required();
    commands.push_back({g, [gen] { return run_gen(*gen); }});

    auto rep = std::make_shared<ReproduceOptions>();
    auto* r = app.add_subcommand("reproduce-two-moons", "IPM against spectral clustering over two-moons draws");
    r->add_option("--draws", rep->draws, "Number of draws")->capture_default_str();
    r->add_option("--n", rep->n, "Points per draw")->capture_default_str();
    r->add_option("--knn", rep->knn, "Neighbors of the kNN graph")->capture_default_str();
    r->add_option("--restarts", rep->restarts, "Random starts per draw")->capture_default_str();
    r->add_option("--seed", rep->seed, "Master seed")->capture_default_str();
    r->add_option("--out", rep->out, "Output directory")->required();
    commands.push_back({r, [rep] { return run_reproduce(*rep); }});
}

}  // namespace nlipm::cli
