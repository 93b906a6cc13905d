#include "commands.hpp"
#include "manifest.hpp"

#include "nlipm/io.hpp"
#include "nlipm/sparse_pca.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

namespace nlipm::cli {

namespace {

struct SpcaOptions {
    std::string matrix;
    std::vector<double> alpha;
    std::string sweep;
    std::size_t restarts = 10;
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
    std::string out;
};

double parse_number(const std::string& text, const char* what) {
    double x = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (ec != std::errc() || ptr != end) throw CliError(kInputError, std::string("bad ") + what + " '" + text + "'");
    return x;
}

// "a0:a1:steps" with steps evenly spaced values from a0 to a1.
std::vector<double> parse_sweep(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw CliError(kInputError, "--alpha-sweep expects a0:a1:steps");
    const double a0 = parse_number(spec.substr(0, c1), "sweep start");
    const double a1 = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), "sweep end");
    const double steps = parse_number(spec.substr(c2 + 1), "sweep count");
    if (steps < 1 || steps != std::floor(steps)) throw CliError(kInputError, "sweep count must be a positive integer");
    if (a1 < a0) throw CliError(kInputError, "sweep end must not be below its start");
    const auto count = static_cast<std::size_t>(steps);
    if (count == 1) return {a0};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = a1;
    return out;
}

int run_spca(const SpcaOptions& o) {
    if (o.alpha.empty() == o.sweep.empty()) throw CliError(kInputError, "give exactly one of --alpha and --alpha-sweep");
    std::vector<double> alphas = o.sweep.empty() ? o.alpha : parse_sweep(o.sweep);
    std::sort(alphas.begin(), alphas.end());
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw CliError(kInputError, "alpha must lie in [0, 1]");

    const std::filesystem::path outDir(o.out);
    Manifest manifest("spca");
    manifest.set_seed(o.seed);
    manifest.parameters() = {{"matrix", o.matrix}, {"alphas", alphas}, {"restarts", o.restarts},
                             {"epsilon", o.epsilon}, {"seed", o.seed}};

    manifest.start_phase("read");
    std::ifstream in(o.matrix);
    if (!in) throw CliError(kInputError, "cannot open " + o.matrix);
    const Matrix raw = io::read_matrix_csv(in);
    manifest.add_input(o.matrix);
    const spca::DataMatrix X(raw);
    for (std::size_t j : X.dropped_columns())
        std::cerr << "nlipm spca: warning: column " << j << " is constant; dropped\n";
    manifest.parameters()["dropped_columns"] = X.dropped_columns();
    manifest.end_phase();

    manifest.start_phase("sweep");
    IpmConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.restarts = o.restarts;
    cfg.seed = o.seed;
    const auto rows = spca::tradeoff_sweep(X, alphas, cfg);
    manifest.end_phase();

    prepare_output_dir(outDir);
    std::ostringstream table;
    io::write_tradeoff_csv(table, rows);
    manifest.write_output(outDir, "tradeoff.csv", table.str());
    int code = kOk;
    nlohmann::json summary = nlohmann::json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::ostringstream name;
        name << "component_" << std::setw(3) << std::setfill('0') << k << ".csv";
        std::ostringstream comp;
        io::write_component_csv(comp, X, rows[k]);
        manifest.write_output(outDir, name.str(), comp.str());
        summary.push_back({{"alpha", rows[k].alpha}, {"file", name.str()}, {"iterations", rows[k].iterations},
                           {"converged", rows[k].converged}, {"fixed_point_residual", rows[k].fixedPointResidual},
                           {"fallback_used", rows[k].fallbackUsed}});
        if (!rows[k].converged) code = kNumericalFailure;
    }
    manifest.write_output(outDir, "components.json", summary.dump(2) + "\n");
    manifest.save(outDir);
    if (code != kOk) std::cerr << "nlipm spca: some alpha did not converge within the iteration caps\n";
    std::cout << table.str();
    return code;
}

}  // namespace

void add_spca_command(CLI::App& app, std::vector<Command>& commands) {
    auto opts = std::make_shared<SpcaOptions>();
    auto* sub = app.add_subcommand("spca", "Sparse principal component by the inverse power method");
    sub->add_option("--matrix", opts->matrix, "Numeric CSV, rows are observations, optional header")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--alpha", opts->alpha, "Sparsity weight in [0, 1]; may be repeated");
    sub->add_option("--alpha-sweep", opts->sweep, "a0:a1:steps");
    sub->add_option("--restarts", opts->restarts, "Random starts per alpha")->capture_default_str();
    sub->add_option("--epsilon", opts->epsilon, "Relative objective change that stops the iteration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", opts->seed, "Master seed")->capture_default_str();
    sub->add_option("--out", opts->out, "Output directory")->required();
    commands.push_back({sub, [opts] { return run_spca(*opts); }});
}

}  // namespace nlipm::cli
