#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlipm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kInputError = 2;
inline constexpr int kGuardRefusal = 3;

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

std::string sha256_file(const std::filesystem::path& path);
std::string sha256_string(const std::string& data);

/// Record of one invocation. Everything except the timings is a function
/// of the command line and the input files.
class Manifest {
public:
    explicit Manifest(std::string command);

    nlohmann::json& parameters() { return parameters_; }
    void set_seed(std::uint64_t seed) { seed_ = seed; }
    void add_input(const std::filesystem::path& path);

    /// Writes `content` to dir/name and records its digest.
    void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content);

    void start_phase(std::string name);
    void end_phase();

    /// Writes dir/manifest.json.
    void save(const std::filesystem::path& dir) const;

private:
    std::string command_;
    nlohmann::json parameters_ = nlohmann::json::object();
    std::uint64_t seed_ = 0;
    nlohmann::json inputs_ = nlohmann::json::array();
    nlohmann::json outputs_ = nlohmann::json::object();
    nlohmann::json timings_ = nlohmann::json::object();
    std::string phase_;
    std::chrono::steady_clock::time_point phaseStart_;
};

/// Creates the output directory or fails with kInputError.
void prepare_output_dir(const std::filesystem::path& dir);

}  // namespace nlipm::cli
