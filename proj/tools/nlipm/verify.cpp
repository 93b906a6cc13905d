#include "commands.hpp"
#include "manifest.hpp"

#include "nlipm/io.hpp"
#include "nlipm/one_laplacian.hpp"
#include "nlipm/oracles/oracles.hpp"
#include "nlipm/sparse_pca.hpp"
#include "nlipm/threshold.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

namespace nlipm::cli {

namespace {

struct VerifyOptions {
    std::string graph;
    std::string matrix;
    std::size_t maxN = 12;
    std::uint64_t seed = 0;
};

// The enumeration oracle stops at this size regardless of --max-n.
constexpr std::size_t kEnumerationLimit = 24;
constexpr int kSweepVectors = 1000;

class Table {
public:
    void row(bool pass, const std::string& name, const std::string& detail) {
        std::printf("%-4s  %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
        allPass_ = allPass_ && pass;
    }
    bool all_pass() const { return allPass_; }

private:
    bool allPass_ = true;
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Vector normal_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> normal;
    Vector v(n);
    for (auto& x : v) x = normal(rng);
    return v;
}

void sweep_pair(Table& table, const FunctionalPair& pair, const std::string& label, std::mt19937_64& rng,
                Eigen::Index n) {
    double euler = 0.0, hoelder = 0.0;
    for (int k = 0; k < kSweepVectors; ++k) {
        const Vector f = normal_vector(rng, n);
        const Vector h = normal_vector(rng, n);
        for (Term t : {Term::R, Term::S}) {
            euler = std::max(euler, check_euler_identity(pair, f, t));
            hoelder = std::max(hoelder, check_hoelder_inequality(pair, f, h, t));
        }
    }
    table.row(euler <= 1e-10, "euler identity " + label, fmt("max residual %.2e", euler));
    table.row(hoelder <= 1e-10, "hoelder inequality " + label, fmt("max violation %.2e", hoelder));
}

void verify_graph(Table& table, const VerifyOptions& o) {
    const auto g = io::read_edge_list_file(o.graph);
    const std::size_t n = g.vertex_count();
    if (o.maxN > kEnumerationLimit)
        throw CliError(kInputError, "--max-n above " + std::to_string(kEnumerationLimit) + " is not supported");
    if (n > o.maxN)
        throw CliError(kGuardRefusal, "graph has " + std::to_string(n) + " vertices, above --max-n " +
                                          std::to_string(o.maxN) + "; enumeration would take 2^(n-1) cuts");
    if (n < 2) throw CliError(kInputError, "graph needs at least two vertices");
    if (!graph::is_connected(g)) throw CliError(kInputError, "graph is disconnected; h_RCC is zero");

    const Matrix W = oracles::dense_weights(g);
    const auto brute = oracles::brute_force_hrcc(g);
    std::printf("h_RCC = %s\n", io::format_double(brute.value).c_str());

    IpmConfig cfg;
    cfg.seed = o.seed;
    cfg.restarts = 3;
    const auto outcome = onelap::ipm_one_laplacian_restarts(g, cfg, true);
    bool sandwich = true;
    double lowest = 1e300;
    for (const auto& run : outcome.runs) {
        const Vector f0 = run.spectral ? onelap::spectral_initialization(g) : onelap::random_initialization(n, run.seed);
        const double upper = oracles::dense_f1(W, onelap::median_zero_shift(f0));
        const double lambda = run.result.eigen.eigenvalue;
        sandwich = sandwich && lambda >= brute.value - 1e-10 && lambda <= upper + 1e-10;
        lowest = std::min(lowest, lambda);
    }
    table.row(sandwich, "eigenvalue sandwich", fmt("lowest eigenvalue %.6g, h_RCC %.6g", lowest, brute.value));
    const double best = outcome.runs[outcome.best].result.bestThreshold.value;
    table.row(best >= brute.value - 1e-12, "thresholded rcc >= h_RCC", fmt("ipm rcc %.6g, h_RCC %.6g", best, brute.value));
    const double init = outcome.runs.back().result.finalThreshold.value;
    table.row(init <= outcome.spectralThreshold.value, "spectral dominance",
              fmt("spectral-init rcc %.6g, spectral rcc %.6g", init, outcome.spectralThreshold.value));

    std::vector<bool> small = brute.inSet;
    std::size_t size = 0;
    for (bool b : small) size += b;
    if (2 * size > n) small.flip();
    Vector indicator = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        if (small[i]) indicator[static_cast<Eigen::Index>(i)] = 1.0;
    const double gapIndicator = std::abs(onelap::f1(g, indicator) - oracles::dense_rcc(W, small));
    table.row(gapIndicator <= 1e-12, "indicator functional", fmt("|F1(1_C) - rcc(C)| = %.2e", gapIndicator));

    std::mt19937_64 rng(o.seed);
    const auto m = static_cast<Eigen::Index>(n);
    std::size_t violations = 0;
    for (int k = 0; k < kSweepVectors; ++k) {
        const Vector f = onelap::median_zero_shift(normal_vector(rng, m));
        if (onelap::optimal_threshold(g, f).value > oracles::dense_f1(W, f) * (1.0 + 1e-12)) ++violations;
    }
    table.row(violations == 0, "threshold decrease", fmt("%.0f of 1000 vectors violate", double(violations)));
    sweep_pair(table, onelap::total_variation_pair(g), "(TV / l1)", rng, m);
}

void verify_matrix(Table& table, const VerifyOptions& o) {
    std::ifstream in(o.matrix);
    if (!in) throw CliError(kInputError, "cannot open " + o.matrix);
    const spca::DataMatrix X(io::read_matrix_csv(in));
    const Eigen::Index p = X.cols();
    std::mt19937_64 rng(o.seed);

    // Inner problems as they arise in the iteration: mu and lambda from a
    // random point of the data.
    double worst = 0.0;
    int checked = 0;
    for (int k = 0; k < 200 && checked < 50; ++k) {
        const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const Vector f = normal_vector(rng, p);
        const Vector xf = X.X() * f;
        if (!(xf.norm() > 0.0)) continue;
        const Vector mu = X.X().transpose() * xf / xf.norm();
        const double lambda = spca::spca_functional(X, f, alpha);
        const Vector g = spca::spca_inner_closed_form(mu, lambda, alpha);
        if (!(g.norm() > 1.0 - alpha)) continue;
        const Vector oracle = oracles::spca_subgradient_oracle(mu, lambda, alpha, 400000);
        worst = std::max(worst, 1.0 - g.normalized().dot(oracle.normalized()));
        ++checked;
    }
    table.row(checked > 0 && worst <= 1e-8, "closed form vs subgradient",
              fmt("%.0f instances, max 1 - cos %.2e", checked, worst));

    for (double alpha : {0.0, 0.5, 1.0})
        sweep_pair(table, spca::spca_pair(X, alpha), fmt("(spca, alpha %.1f)", alpha), rng, p);

    const auto r0 = spca::ipm_sparse_pca(X, 0.0, IpmConfig{});
    const auto eig = oracles::dense_eigen(X.X().transpose() * X.X());
    const double cos0 = std::abs(eig.vectors.col(p - 1).dot(r0.component.normalized()));
    table.row(1.0 - cos0 <= 1e-6, "alpha 0 top eigenvector", fmt("1 - cos %.2e", 1.0 - cos0));

    const auto r1 = spca::ipm_sparse_pca(X, 1.0, IpmConfig{});
    Eigen::Index top = 0;
    X.column_norms().maxCoeff(&top);
    table.row(r1.cardinality == 1 && r1.component[top] != 0.0, "alpha 1 max-variance feature",
              fmt("cardinality %.0f, feature %.0f", double(r1.cardinality), double(X.original_index(top))));
}

int run_verify(const VerifyOptions& o) {
    if (o.graph.empty() == o.matrix.empty()) throw CliError(kInputError, "give exactly one of --graph and --matrix");
    Table table;
    if (!o.graph.empty())
        verify_graph(table, o);
    else
        verify_matrix(table, o);
    std::printf("%s\n", table.all_pass() ? "all checks passed" : "some checks failed");
    return table.all_pass() ? kOk : kNumericalFailure;
}

}  // namespace

void add_verify_command(CLI::App& app, std::vector<Command>& commands) {
    auto opts = std::make_shared<VerifyOptions>();
    auto* sub = app.add_subcommand("verify", "Check a small graph or a data matrix against brute-force oracles");
    sub->add_option("--graph", opts->graph, "Edge list")->check(CLI::ExistingFile);
    sub->add_option("--matrix", opts->matrix, "Numeric CSV for the sparse PCA checks")->check(CLI::ExistingFile);
    sub->add_option("--max-n", opts->maxN, "Refuse graphs with more vertices")->capture_default_str();
    sub->add_option("--seed", opts->seed, "Seed of the random checks")->capture_default_str();
    commands.push_back({sub, [opts] { return run_verify(*opts); }});
}

}  // namespace nlipm::cli
