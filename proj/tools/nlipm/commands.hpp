#pragma once

#include <CLI11.hpp>

#include <functional>
#include <vector>

namespace nlipm::cli {

struct Command {
    CLI::App* app = nullptr;
    std::function<int()> run;
};

void add_cluster_command(CLI::App& app, std::vector<Command>& commands);
void add_spca_command(CLI::App& app, std::vector<Command>& commands);
void add_two_moons_commands(CLI::App& app, std::vector<Command>& commands);
void add_verify_command(CLI::App& app, std::vector<Command>& commands);

}  // namespace nlipm::cli
