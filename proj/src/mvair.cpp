#include "inbox/mvair.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

namespace inbox {

namespace {

constexpr int kEnumCap = 4096;  // 2^12 corner constraints per quadratic

bool all_linear(const ConvexSet& set) {
    for (const auto& iq : set.ineqs) {
        if (!std::holds_alternative<LinearIneq>(iq)) return false;
    }
    return true;
}

// Objective rows: log(x^u_j - x^l_j) for z = (x^u, x^l).
void add_volume_objective(BarrierProblem& p, int d) {
    p.log_w = MatrixXd::Zero(d, 2 * d);
    p.log_d = VectorXd::Zero(d);
    for (int j = 0; j < d; ++j) {
        p.log_w(j, j) = 1.0;
        p.log_w(j, d + j) = -1.0;
    }
    p.lin = VectorXd::Zero(2 * d);
}

BarrierConstraint reduce_linear(const LinearIneq& lin, int d) {
    BarrierConstraint g;
    g.a = VectorXd::Zero(2 * d);
    for (int j = 0; j < d; ++j) {
        const double pij = lin.p(j);
        g.a(j) = std::max(pij, 0.0);        // p+ on x^u
        g.a(d + j) = -std::max(-pij, 0.0);  // -p- on x^l
    }
    g.c = -lin.b;
    return g;
}

// Corner constraint for a quadratic: v_j = x^u_j (pick_upper) or x^l_j.
BarrierConstraint corner_constraint(const QuadraticIneq& q, int d,
                                    const std::vector<bool>& pick_upper) {
    auto idx = [&](int j) { return pick_upper[j] ? j : d + j; };
    BarrierConstraint g;
    g.A = MatrixXd::Zero(2 * d, 2 * d);
    g.a = VectorXd::Zero(2 * d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) g.A(idx(j), idx(k)) += q.A(j, k);
        g.a(idx(j)) += 2.0 * q.b(j);
    }
    g.c = q.c;
    return g;
}

int append_quadratic(BarrierProblem& p, const QuadraticIneq& q, int d) {
    const double norm_a = std::max(1.0, q.A.norm());
    const double tol = 1e-12 * norm_a;
    bool diagonal = true;
    for (int j = 0; j < d && diagonal; ++j) {
        for (int k = 0; k < d; ++k) {
            if (j != k && std::abs(q.A(j, k)) > tol) {
                diagonal = false;
                break;
            }
        }
    }
    // Coordinates whose per-axis term is monotone get a pinned endpoint;
    // the rest branch over both endpoints.
    std::vector<int> free_coords;
    std::vector<bool> pinned_upper(d, true);
    for (int j = 0; j < d; ++j) {
        if (diagonal && std::abs(q.A(j, j)) <= tol) {
            pinned_upper[j] = q.b(j) >= 0.0;
        } else {
            free_coords.push_back(j);
        }
    }
    const int k_free = static_cast<int>(free_coords.size());
    if (k_free > 12 || (1LL << k_free) > kEnumCap) {
        throw CapabilityError(
            "build_mvair_general: quadratic needs 2^" + std::to_string(k_free) +
            " corner constraints; the vertex-enumeration fallback is capped at d <= 12 (" +
            std::to_string(kEnumCap) + " per quadratic)");
    }
    const int count = 1 << k_free;
    for (int mask = 0; mask < count; ++mask) {
        std::vector<bool> pick = pinned_upper;
        for (int b = 0; b < k_free; ++b) pick[free_coords[b]] = (mask >> b) & 1;
        p.constraints.push_back(corner_constraint(q, d, pick));
    }
    return count;
}

}  // namespace

SplitMatrix split_pos_neg(const MatrixXd& P) {
    if (!P.allFinite()) throw InputError("split_pos_neg: non-finite entries");
    SplitMatrix s;
    s.p_plus = P.cwiseMax(0.0);
    s.p_minus = (-P).cwiseMax(0.0);
    return s;
}

BarrierProblem build_mvair_polytope(const ConvexSet& set) {
    if (!all_linear(set)) {
        throw InputError("build_mvair_polytope: set has quadratic constraints; "
                         "use build_mvair_general");
    }
    const int d = set.dim;
    BarrierProblem p;
    p.dim = 2 * d;
    add_volume_objective(p, d);
    p.constraints.reserve(set.ineqs.size());
    for (const auto& iq : set.ineqs) {
        p.constraints.push_back(reduce_linear(std::get<LinearIneq>(iq), d));
    }
    return p;
}

BarrierProblem build_mvair_general(const ConvexSet& set, std::vector<int>* group_sizes) {
    const int d = set.dim;
    BarrierProblem p;
    p.dim = 2 * d;
    add_volume_objective(p, d);
    if (group_sizes) group_sizes->clear();
    for (const auto& iq : set.ineqs) {
        int emitted = 1;
        if (const auto* lin = std::get_if<LinearIneq>(&iq)) {
            p.constraints.push_back(reduce_linear(*lin, d));
        } else {
            emitted = append_quadratic(p, std::get<QuadraticIneq>(iq), d);
        }
        if (group_sizes) group_sizes->push_back(emitted);
    }
    return p;
}

const char* to_string(InitMethod m) {
    switch (m) {
        case InitMethod::BBoxMidpoint: return "BBoxMidpoint";
        case InitMethod::BBoxPerturbed: return "BBoxPerturbed";
        case InitMethod::SimplexCentroids: return "SimplexCentroids";
    }
    return "Unknown";
}

namespace {

VectorXd box_point(const VectorXd& center, const VectorXd& half_width, double delta) {
    const int d = center.size();
    VectorXd z(2 * d);
    z.head(d) = center + delta * half_width;
    z.tail(d) = center - delta * half_width;
    return z;
}

bool strict_start(const BarrierProblem& p, const VectorXd& z, double scale) {
    const int d = p.dim / 2;
    for (int j = 0; j < d; ++j) {
        if (!(z(j) > z(d + j))) return false;
    }
    return p.strictly_feasible(z, 1e-10 * scale);
}

// delta-halving from 0.25, then deepen along the feasible ray and average.
bool open_box(const BarrierProblem& p, const VectorXd& center, const VectorXd& half_width,
              double scale, VectorXd& out) {
    double delta1 = 0.25;
    bool found = false;
    for (int it = 0; it < 60; ++it) {
        if (strict_start(p, box_point(center, half_width, delta1), scale)) {
            found = true;
            break;
        }
        delta1 *= 0.5;
    }
    if (!found) return false;
    double lo = delta1;
    double hi = 1.0;
    if (strict_start(p, box_point(center, half_width, 1.0), scale)) {
        lo = 1.0;
    } else {
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (strict_start(p, box_point(center, half_width, mid), scale)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    const double averaged = 0.5 * lo;  // midpoint of the degenerate start and the ray end
    const double delta = strict_start(p, box_point(center, half_width, averaged), scale)
                             ? averaged
                             : delta1;
    out = box_point(center, half_width, delta);
    return true;
}

bool simplex_start(const ConvexSet& set, const BarrierProblem& p, double scale, VectorXd& out) {
    const int d = set.dim;
    if (!all_linear(set)) return false;  // polytope-only construction
    // d+1 boundary points from support queries in spread directions.
    std::vector<VectorXd> pts;
    for (int j = 0; j < d; ++j) {
        VectorXd dir = VectorXd::Zero(d);
        dir(j) = 1.0;
        pts.push_back(support_point(set, dir));
    }
    pts.push_back(support_point(set, VectorXd::Constant(d, -1.0)));
    // Facet centroids in place of Fermat medians.
    VectorXd y1 = VectorXd::Zero(d);
    for (int k = 0; k < d; ++k) y1 += pts[k];
    y1 /= d;
    VectorXd y2 = pts[0];
    for (int k = 2; k <= d; ++k) y2 += pts[k];
    y2 /= d;
    VectorXd z(2 * d);
    z.head(d) = y1.cwiseMax(y2);
    z.tail(d) = y1.cwiseMin(y2);
    if (!strict_start(p, z, scale)) return false;
    out = z;
    return true;
}

InitialPoint initial_feasible_impl(const ConvexSet& set, const BarrierProblem& p,
                                   const BoxRegion& bbox, bool prefer_simplex) {
    const double scale = box_scale(bbox);
    if (prefer_simplex) {
        VectorXd z;
        if (simplex_start(set, p, scale, z)) return {z, InitMethod::SimplexCentroids};
    }
    const VectorXd center = 0.5 * (bbox.xu + bbox.xl);
    const VectorXd half_width = 0.5 * (bbox.xu - bbox.xl);
    {
        const int d = set.dim;
        VectorXd mid(2 * d);
        mid.head(d) = center;
        mid.tail(d) = center;
        if (strict_start(p, mid, scale)) return {mid, InitMethod::BBoxMidpoint};
    }
    VectorXd z;
    if (open_box(p, center, half_width, scale, z)) return {z, InitMethod::BBoxPerturbed};
    // Midpoint sits on the boundary of C; recenter at a strictly interior point.
    const VectorXd inner = interior_point(set);
    if (open_box(p, inner, half_width, scale, z)) return {z, InitMethod::BBoxPerturbed};
    throw InfeasibleError("initial_feasible: no strictly feasible start after 60 halvings "
                          "(empty interior?)");
}

}  // namespace

InitialPoint initial_feasible(const ConvexSet& set, bool prefer_simplex) {
    const BarrierProblem p =
        all_linear(set) ? build_mvair_polytope(set) : build_mvair_general(set);
    return initial_feasible_impl(set, p, bounding_box(set), prefer_simplex);
}

MvairResult solve_mvair(const ConvexSet& set, const SolverConfig& cfg) {
    const bool linear = all_linear(set);
    const BarrierProblem p = linear ? build_mvair_polytope(set) : build_mvair_general(set);
    const BoxRegion bbox = bounding_box(set);
    const InitialPoint start = initial_feasible_impl(set, p, bbox, false);
    const SolverReport rep = path_follow(p, start.x0, cfg);

    const int d = set.dim;
    MvairResult res;
    res.box.xu = rep.x_star.head(d);
    res.box.xl = rep.x_star.tail(d);
    res.report = rep;

    // Containment postcondition at 1e-6*scale: corner check when small,
    // the exact reduced constraints otherwise.
    const double tol = 1e-6 * box_scale(bbox);
    if (d <= 12) {
        VectorXd corner(d);
        for (int mask = 0; mask < (1 << d); ++mask) {
            for (int j = 0; j < d; ++j) {
                corner(j) = (mask >> j) & 1 ? res.box.xu(j) : res.box.xl(j);
            }
            if (!contains(set, corner, tol)) {
                throw Error("solve_mvair: result box violates containment");
            }
        }
    } else {
        for (const auto& g : p.constraints) {
            if (g.value(rep.x_star) > tol) {
                throw Error("solve_mvair: result box violates containment");
            }
        }
    }
    return res;
}

}  // namespace inbox
