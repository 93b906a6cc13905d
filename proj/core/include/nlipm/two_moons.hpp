#pragma once

#include "nlipm/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace nlipm::graph {

/// Two interleaved half-circles. The upper arc is centered at the origin,
/// the lower arc at (radius, radius / 2), both of the given radius. The
/// planar points are embedded in the first two of `dimension` coordinates
/// and every coordinate receives N(0, noiseSigma^2) noise.
struct TwoMoonsSpec {
    std::size_t n = 2000;
    double noiseSigma = std::sqrt(0.02);
    double radius = 1.0;
    std::size_t kNeighbors = 10;
    std::uint64_t seed = 0;
    std::size_t dimension = 100;

    // Throws std::invalid_argument unless n >= 4, kNeighbors >= 1,
    // dimension >= 2, radius > 0 and noiseSigma >= 0.
    void validate() const;
};

struct TwoMoons {
    Eigen::MatrixXd points;  // n x dimension, one point per row
    Partition labels;        // 0 = upper arc, 1 = lower arc
};

/// The first ceil(n/2) points lie on the upper arc. Deterministic given
/// the seed.
TwoMoons generate_two_moons(const TwoMoonsSpec& spec);

}  // namespace nlipm::graph
