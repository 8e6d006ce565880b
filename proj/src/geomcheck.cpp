#include "inbox/geomcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace inbox {

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross2(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_distance(const Vector2d& p, const Vector2d& a, const Vector2d& b) {
    const Vector2d e = b - a;
    const double len2 = e.squaredNorm();
    const double s = len2 > 0.0 ? std::clamp((p - a).dot(e) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + s * e)).norm();
}

bool is_square(const Rectangle2D& rect, double tol) {
    const double lu = rect.u.norm();
    const double lv = rect.v.norm();
    return std::abs(lu - lv) <= tol * std::max(lu, lv);
}

// Min |g_i| over the defining inequalities: the spec's boundary residual.
double boundary_residual(const ConvexSet& set, const Vector2d& p) {
    VectorXd x(2);
    x << p.x(), p.y();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iq : set.ineqs) best = std::min(best, std::abs(residual(iq, x)));
    return best;
}

}  // namespace

const char* to_string(CornerKind k) {
    switch (k) {
        case CornerKind::VertexCorner: return "VertexCorner";
        case CornerKind::EdgeCorner: return "EdgeCorner";
        case CornerKind::InteriorCorner: return "InteriorCorner";
    }
    return "Unknown";
}

const char* to_string(OptimalityCase c) {
    switch (c) {
        case OptimalityCase::Case1_NoInterior: return "Case1_NoInterior";
        case OptimalityCase::Case2_OneInteriorAdjacentVertex:
            return "Case2_OneInteriorAdjacentVertex";
        case OptimalityCase::Case3_TwoDiagonalInteriorSquare:
            return "Case3_TwoDiagonalInteriorSquare";
        case OptimalityCase::Violation: return "Violation";
    }
    return "Unknown";
}

CornerClass classify_corner(const Polygon2D& poly, const Vector2d& point, double tol) {
    if (!polygon_contains(poly, point, tol)) {
        throw InputError("classify_corner: point lies outside the polygon beyond tol");
    }
    const auto& v = poly.vertices;
    const size_t m = v.size();
    CornerClass best_vertex{CornerKind::VertexCorner, -1,
                            std::numeric_limits<double>::infinity()};
    for (size_t i = 0; i < m; ++i) {
        const double d = (point - v[i]).norm();
        if (d < best_vertex.residual) best_vertex = {CornerKind::VertexCorner, (int)i, d};
    }
    if (best_vertex.residual <= tol) return best_vertex;

    CornerClass best_edge{CornerKind::EdgeCorner, -1, std::numeric_limits<double>::infinity()};
    for (size_t i = 0; i < m; ++i) {
        const double d = point_segment_distance(point, v[i], v[(i + 1) % m]);
        if (d < best_edge.residual) best_edge = {CornerKind::EdgeCorner, (int)i, d};
    }
    if (best_edge.residual <= tol) return best_edge;
    return {CornerKind::InteriorCorner, -1, best_edge.residual};
}

OptimalityVerdict check_polygon_optimality(const Polygon2D& poly, const Rectangle2D& rect,
                                           double tol) {
    OptimalityVerdict out;
    const auto corners = rect.corners();  // cyclic: adjacency is +-1 mod 4
    std::vector<int> interior;
    for (int i = 0; i < 4; ++i) {
        out.corners[i] = classify_corner(poly, corners[i], tol);
        if (out.corners[i].kind == CornerKind::InteriorCorner) interior.push_back(i);
    }
    std::ostringstream notes;

    auto on_boundary = [&](int i) { return out.corners[i].kind != CornerKind::InteriorCorner; };
    const bool diagonal_boundary_pair =
        (on_boundary(0) && on_boundary(2)) || (on_boundary(1) && on_boundary(3));

    switch (interior.size()) {
        case 0:
            out.verdict = OptimalityCase::Case1_NoInterior;
            break;
        case 1: {
            const int i = interior[0];
            const bool adjacent_vertex =
                out.corners[(i + 1) % 4].kind == CornerKind::VertexCorner ||
                out.corners[(i + 3) % 4].kind == CornerKind::VertexCorner;
            out.verdict = adjacent_vertex ? OptimalityCase::Case2_OneInteriorAdjacentVertex
                                          : OptimalityCase::Violation;
            if (!adjacent_vertex) notes << "interior corner has no adjacent vertex-corner; ";
            break;
        }
        case 2: {
            const bool diagonal = (interior[1] - interior[0]) == 2;
            if (!diagonal) {
                out.verdict = OptimalityCase::Violation;
                notes << "two adjacent interior corners; ";
                break;
            }
            const bool vertex_pair =
                out.corners[(interior[0] + 1) % 4].kind == CornerKind::VertexCorner &&
                out.corners[(interior[0] + 3) % 4].kind == CornerKind::VertexCorner;
            const bool square = is_square(rect, tol);
            if (vertex_pair && square) {
                out.verdict = OptimalityCase::Case3_TwoDiagonalInteriorSquare;
            } else {
                out.verdict = OptimalityCase::Violation;
                if (!vertex_pair) notes << "diagonal interior corners without vertex-corners; ";
                if (!square) notes << "diagonal interior corners but not a square; ";
            }
            break;
        }
        default:
            out.verdict = OptimalityCase::Violation;
            notes << interior.size() << " interior corners; ";
            break;
    }

    if (out.verdict != OptimalityCase::Violation && !diagonal_boundary_pair) {
        out.verdict = OptimalityCase::Violation;
        notes << "no diagonal boundary pair; ";
    }
    for (int i : interior) {  // each interior corner needs two adjacent boundary corners
        if (out.verdict == OptimalityCase::Violation) break;
        if (!on_boundary((i + 1) % 4) || !on_boundary((i + 3) % 4)) {
            out.verdict = OptimalityCase::Violation;
            notes << "interior corner " << i << " lacks adjacent boundary corners; ";
        }
    }
    out.notes = notes.str();
    return out;
}

CentralSymmetryVerdict check_central_symmetry(const Vector2d& center, const Rectangle2D& rect,
                                              double tol) {
    CentralSymmetryVerdict v;
    v.offset = (rect.center() - center).norm();
    v.pass = v.offset <= tol;
    return v;
}

std::vector<AxialConditionVerdict> check_axial_symmetry(const AxisLine& axis,
                                                        const ConvexSet& set,
                                                        const Rectangle2D& rect, double tol) {
    if (axis.dir.lpNorm<Eigen::Infinity>() == 0.0) {
        throw InputError("check_axial_symmetry: zero axis direction");
    }
    const Vector2d dir = axis.dir.normalized();
    const auto corners = rect.corners();
    std::vector<AxialConditionVerdict> verdicts;

    // 1. The axis crosses the rectangle interior: clip the line against the
    // rectangle's four halfplanes and measure the chord.
    {
        AxialConditionVerdict v;
        v.condition = 1;
        double s_lo = -std::numeric_limits<double>::infinity();
        double s_hi = std::numeric_limits<double>::infinity();
        const Vector2d eu = rect.u;
        const Vector2d ev = rect.v;
        const struct {
            Vector2d n;
            double b;
        } planes[4] = {
            {-eu, -eu.dot(rect.x)},
            {eu, eu.dot(rect.x + eu)},
            {-ev, -ev.dot(rect.x)},
            {ev, ev.dot(rect.x + ev)},
        };
        bool empty = false;
        for (const auto& pl : planes) {
            const double denom = pl.n.dot(dir);
            const double num = pl.b - pl.n.dot(axis.point);
            if (std::abs(denom) < 1e-300) {
                if (num < 0.0) empty = true;
                continue;
            }
            const double s = num / denom;
            if (denom > 0.0) {
                s_hi = std::min(s_hi, s);
            } else {
                s_lo = std::max(s_lo, s);
            }
        }
        const double chord = empty ? 0.0 : std::max(0.0, s_hi - s_lo);
        v.residual = chord;
        v.pass = chord > tol;
        if (!v.pass) v.note = "axis does not cross the rectangle interior";
        verdicts.push_back(v);
    }

    // Side of the axis per corner; |offset| <= tol counts as on-axis.
    std::array<double, 4> side;
    for (int i = 0; i < 4; ++i) side[i] = cross2(dir, corners[i] - axis.point);

    // 2. Boundary corner on each side, unless a corner sits on an end of the
    // symmetry chord (the axis-direction support points).
    {
        AxialConditionVerdict v;
        v.condition = 2;
        VectorXd d2(2);
        d2 << dir.x(), dir.y();
        const VectorXd e_fwd = support_point(set, d2);
        d2 = -d2;
        const VectorXd e_bwd = support_point(set, d2);
        const Vector2d end_fwd(e_fwd(0), e_fwd(1));
        const Vector2d end_bwd(e_bwd(0), e_bwd(1));
        bool near_endpoint = false;
        bool pos_boundary = false, neg_boundary = false;
        double min_residual = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) {
            const double res = boundary_residual(set, corners[i]);
            min_residual = std::min(min_residual, res);
            near_endpoint = near_endpoint || (corners[i] - end_fwd).norm() <= tol ||
                            (corners[i] - end_bwd).norm() <= tol;
            if (res <= tol) {
                if (side[i] > tol) pos_boundary = true;
                if (side[i] < -tol) neg_boundary = true;
            }
        }
        v.residual = min_residual;
        v.pass = near_endpoint || (pos_boundary && neg_boundary);
        if (near_endpoint) v.note = "corner on a symmetry-chord endpoint";
        if (!v.pass) v.note = "missing boundary corner on one side of the axis";
        verdicts.push_back(v);
    }

    const bool square = is_square(rect, tol);

    // 3. A square cannot keep three corners strictly on one side.
    {
        AxialConditionVerdict v;
        v.condition = 3;
        if (!square) {
            v.applicable = false;
            v.pass = true;
            v.note = "not a square";
        } else {
            int pos = 0, neg = 0;
            for (double s : side) {
                if (s > tol) ++pos;
                if (s < -tol) ++neg;
            }
            v.pass = !(pos == 3 || neg == 3);
            v.residual = std::max(pos, neg);
            if (!v.pass) v.note = "square with three corners strictly on one side";
        }
        verdicts.push_back(v);
    }

    // 4. Two corners on the axis: square, or edge angle alpha in
    // [pi/6 - tol, pi/4 + tol).
    {
        AxialConditionVerdict v;
        v.condition = 4;
        int on_axis = 0;
        for (double s : side) {
            if (std::abs(s) <= tol) ++on_axis;
        }
        if (on_axis < 2) {
            v.applicable = false;
            v.pass = true;
            v.note = "fewer than two corners on the axis";
        } else if (square) {
            v.pass = true;
            v.note = "square";
        } else {
            auto acute = [&](const Vector2d& e) {
                const double c = std::abs(e.normalized().dot(dir));
                return std::acos(std::clamp(c, 0.0, 1.0));
            };
            const double au = acute(rect.u);
            const double av = acute(rect.v);
            const double alpha = std::min({au, av, kPi - au, kPi - av});
            v.residual = alpha;
            v.pass = alpha >= kPi / 6.0 - tol && alpha < kPi / 4.0 + tol;
            if (!v.pass) v.note = "diagonal on axis with edge angle outside [pi/6, pi/4)";
        }
        verdicts.push_back(v);
    }
    return verdicts;
}

}  // namespace inbox
