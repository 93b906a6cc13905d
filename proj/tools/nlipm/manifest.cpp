#include "manifest.hpp"

#include <Eigen/Core>
#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace nlipm::cli {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256: digest initialization failed");
    }
    void update(const char* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }
    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
        std::ostringstream out;
        for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
        return out.str();
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kInputError, "cannot open " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

std::string sha256_string(const std::string& data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex();
}

Manifest::Manifest(std::string command) : command_(std::move(command)) {}

void Manifest::add_input(const std::filesystem::path& path) {
    inputs_.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void Manifest::write_output(const std::filesystem::path& dir, const std::string& name,
                            const std::string& content) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw CliError(kInputError, "cannot write " + path.string());
    outputs_[name] = sha256_string(content);
}

void Manifest::start_phase(std::string name) {
    phase_ = std::move(name);
    phaseStart_ = std::chrono::steady_clock::now();
}

void Manifest::end_phase() {
    if (phase_.empty()) return;
    timings_[phase_] = std::chrono::duration<double>(std::chrono::steady_clock::now() - phaseStart_).count();
    phase_.clear();
}

void Manifest::save(const std::filesystem::path& dir) const {
    nlohmann::json j;
    j["command"] = command_;
    j["parameters"] = parameters_;
    j["seed"] = seed_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["versions"] = {{"nlipm", NLIPM_VERSION},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                   "." + std::to_string(EIGEN_MINOR_VERSION)}};
    j["wall_clock_seconds"] = timings_;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << '\n';
    if (!out) throw CliError(kInputError, "cannot write manifest in " + dir.string());
}

void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw CliError(kInputError, "cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace nlipm::cli
