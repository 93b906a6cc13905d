#include "commands.hpp"
#include "manifest.hpp"

#include "nlipm/errors.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
    using namespace nlipm::cli;
    CLI::App app{"Inverse power method for nonlinear eigenproblems: 1-Laplacian clustering and sparse PCA"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NLIPM_VERSION);

    std::vector<Command> commands;
    add_cluster_command(app, commands);
    add_spca_command(app, commands);
    add_two_moons_commands(app, commands);
    add_verify_command(app, commands);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            return cmd.run();
        } catch (const CliError& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": " << e.what() << '\n';
            return e.code();
        } catch (const nlipm::ParseError& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": parse error: " << e.what() << '\n';
            return kInputError;
        } catch (const nlipm::DisconnectedGraph& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": " << e.what()
                      << " (pass --allow-components to split along components)\n";
            return kInputError;
        } catch (const nlipm::DomainError& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": " << e.what() << '\n';
            return kInputError;
        } catch (const std::invalid_argument& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": " << e.what() << '\n';
            return kInputError;
        } catch (const std::exception& e) {
            std::cerr << "nlipm " << cmd.app->get_name() << ": numerical failure: " << e.what() << '\n';
            return kNumericalFailure;
        }
    }
    return kInputError;
}
