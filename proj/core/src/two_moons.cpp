#include "nlipm/two_moons.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

namespace nlipm::graph {

void TwoMoonsSpec::validate() const {
    if (n < 4) {
        throw std::invalid_argument("TwoMoonsSpec: n must be at least 4");
    }
    if (kNeighbors < 1) {
        throw std::invalid_argument("TwoMoonsSpec: kNeighbors must be at least 1");
    }
    if (dimension < 2) {
        throw std::invalid_argument("TwoMoonsSpec: dimension must be at least 2");
    }
    if (!(radius > 0.0) || !(noiseSigma >= 0.0)) {
        throw std::invalid_argument("TwoMoonsSpec: radius must be positive, noise nonnegative");
    }
}

TwoMoons generate_two_moons(const TwoMoonsSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    std::normal_distribution<double> noise(0.0, 1.0);

    const std::size_t upper = (spec.n + 1) / 2;
    const double r = spec.radius;
    Eigen::MatrixXd points = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.n),
                                                   static_cast<Eigen::Index>(spec.dimension));
    std::vector<int> labels(spec.n, 0);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = angle(rng);
        const auto row = static_cast<Eigen::Index>(i);
        if (i < upper) {
            points(row, 0) = r * std::cos(t);
            points(row, 1) = r * std::sin(t);
        } else {
            points(row, 0) = r - r * std::cos(t);
            points(row, 1) = 0.5 * r - r * std::sin(t);
            labels[i] = 1;
        }
    }
    if (spec.noiseSigma > 0.0) {
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
            for (Eigen::Index d = 0; d < points.cols(); ++d) {
                points(i, d) += spec.noiseSigma * noise(rng);
            }
        }
    }
    return TwoMoons{std::move(points), Partition(std::move(labels))};
}

}  // namespace nlipm::graph
