#pragma once

#include <utility>
#include <vector>

#include "inbox/barrier.hpp"
#include "inbox/convexset.hpp"

namespace inbox {

// P split into nonnegative parts: p_plus - p_minus == P elementwise, with
// p_plus .* p_minus == 0.
struct SplitMatrix {
    MatrixXd p_plus;
    MatrixXd p_minus;
};

SplitMatrix split_pos_neg(const MatrixXd& P);

// Variable layout of every MVAIR problem: z = (x^u, x^l) in R^{2d}.
// Objective sum_j log(x^u_j - x^l_j); its domain x^u > x^l is enforced by
// the objective itself, so the barrier count equals the emitted constraints.

// Linear sets only: one constraint per inequality via the p+/p- bound.
BarrierProblem build_mvair_polytope(const ConvexSet& set);

// Linear inequalities reduce as in the polytope model. A quadratic gets one
// smooth corner constraint per unresolved endpoint choice: coordinates whose
// worst endpoint is monotone-fixed (zero curvature row) are pinned, the rest
// are enumerated. group_sizes, when given, receives the constraint count
// emitted per input inequality.
BarrierProblem build_mvair_general(const ConvexSet& set, std::vector<int>* group_sizes = nullptr);

enum class InitMethod { BBoxMidpoint, BBoxPerturbed, SimplexCentroids };

const char* to_string(InitMethod m);

struct InitialPoint {
    VectorXd x0;  // (x^u, x^l)
    InitMethod method = InitMethod::BBoxPerturbed;
};

// Strictly feasible start for the built problem: every oracle < -1e-10*scale
// and x^u > x^l componentwise. Default is the bounding-box midpoint with
// delta-halving and ray deepening; prefer_simplex tries the facet-centroid
// simplex construction first (polygon-backed sets).
InitialPoint initial_feasible(const ConvexSet& set, bool prefer_simplex = false);

struct MvairResult {
    BoxRegion box;
    SolverReport report;
};

MvairResult solve_mvair(const ConvexSet& set, const SolverConfig& cfg = {});

}  // namespace inbox
