#pragma once

#include <vector>

#include "inbox/barrier.hpp"
#include "inbox/convexset.hpp"

namespace inbox {

// One fixed-direction solve: t = tan(theta), theta in [-pi/4, pi/4],
// area = f(t) and rect the unique maximizer for that direction.
struct DirectionSample {
    double t = 0.0;
    double theta = 0.0;
    double area = 0.0;
    Rectangle2D rect;
};

// Image of the set under rotation by phi about the origin.
ConvexSet rotate_set(const ConvexSet& set, double phi);

// Fixed-direction problem over z = (u1, v2, x1, x2) after eliminating the
// equality couplings u2 = t*u1, v1 = -t*v2: objective log u1 + log v2, and
// every set inequality instantiated at the four corners (4n constraints).
BarrierProblem build_qt(const ConvexSet& set, double t);

DirectionSample maair_direction(const ConvexSet& set, double t, const SolverConfig& cfg = {});

// Upper bound rho_bar >= AR of the optimal rectangle. Polygon path:
// 4*diam^2/area. General path: 16*sqrt(2)*AR(R') from the bounding-box
// touching chord. Clamped to [1, 1e6]; beyond the cap raises CapabilityError.
double aspect_ratio_bound(const Polygon2D& poly);
double aspect_ratio_bound(const ConvexSet& set);

struct SweepResult {
    Rectangle2D best;
    std::vector<DirectionSample> samples;
    int winner_index = 0;
    double rho_bar = 1.0;
    int directions = 0;
    SolverReport winner_report;
    long total_newton_steps = 0;
    bool all_converged = true;
    double max_gap = 0.0;
};

// Midpoint sampling of K = ceil((pi/2) / (eps/(2*rho_bar))) angular pieces of
// [-pi/4, pi/4]; the best sample has area >= (1-eps) * MAIR area. Samples are
// independent solves; threads > 1 evaluates them in parallel with a
// deterministic, thread-count-invariant winner (ties within 1e-12 break
// toward smaller theta, then smaller index).
SweepResult mair_sweep(const ConvexSet& set, double eps, const SolverConfig& cfg = {},
                       int threads = 1);

// f(t) at `samples` uniform t in [-1, 1], endpoints included.
std::vector<DirectionSample> f_profile(const ConvexSet& set, int samples,
                                       const SolverConfig& cfg = {}, int threads = 1);

}  // namespace inbox
