#pragma once

#include <cstdint>
#include <utility>

#include "inbox/convexset.hpp"

namespace inbox {

// Grid resolutions; positions are i/steps fractions so doubled grids nest.
struct GridSpec {
    int anchor_steps = 32;
    int size_steps = 32;
    int angle_steps = 16;  // MAIR mode only
};

struct OracleRect {
    double area = 0.0;
    Rectangle2D rect;
};

// Exhaustive lower bound on the MAAIR in the frame rotated by arctan(t):
// anchors over the rotated bounding box, width/height over nested size
// grids, candidates kept only when all four corners pass contains() at
// tol 0. Deterministic for any thread count.
OracleRect brute_maair(const ConvexSet& set, double t, const GridSpec& grid, int threads = 1);

// brute_maair maximized over angle_steps+1 uniform angles in [-pi/4, pi/4].
OracleRect brute_mair(const ConvexSet& set, const GridSpec& grid, int threads = 1);

struct AreaEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

// Seeded rejection sampling inside the bounding box; bit-reproducible for a
// fixed seed on one platform.
AreaEstimate monte_carlo_area(const ConvexSet& set, long samples, std::uint64_t seed);

}  // namespace inbox
