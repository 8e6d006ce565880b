#pragma once

#include <array>
#include <string>
#include <vector>

#include "inbox/convexset.hpp"

namespace inbox {

enum class CornerKind { VertexCorner, EdgeCorner, InteriorCorner };

const char* to_string(CornerKind k);

struct CornerClass {
    CornerKind kind = CornerKind::InteriorCorner;
    int witness = -1;     // vertex or edge index, -1 for interior
    double residual = 0;  // distance used for the classification
};

// VertexCorner within tol of a polygon vertex, else EdgeCorner within tol of
// an edge segment, else InteriorCorner. Point must be inside at tol.
CornerClass classify_corner(const Polygon2D& poly, const Vector2d& point, double tol);

enum class OptimalityCase {
    Case1_NoInterior,
    Case2_OneInteriorAdjacentVertex,
    Case3_TwoDiagonalInteriorSquare,
    Violation,
};

const char* to_string(OptimalityCase c);

struct OptimalityVerdict {
    OptimalityCase verdict = OptimalityCase::Violation;
    std::array<CornerClass, 4> corners;
    std::string notes;
};

// Structural necessary conditions for a maximum-area rectangle in a convex
// polygon: no interior corner; or one interior corner with an adjacent
// vertex-corner; or two diagonal interior corners, two diagonal
// vertex-corners, and a square.
OptimalityVerdict check_polygon_optimality(const Polygon2D& poly, const Rectangle2D& rect,
                                           double tol);

struct CentralSymmetryVerdict {
    bool pass = false;
    double offset = 0.0;  // distance from the rectangle center to the set center
};

CentralSymmetryVerdict check_central_symmetry(const Vector2d& center, const Rectangle2D& rect,
                                              double tol);

struct AxisLine {
    Vector2d point;
    Vector2d dir;
};

struct AxialConditionVerdict {
    int condition = 0;  // 1..4
    bool applicable = true;
    bool pass = false;
    double residual = 0.0;
    std::string note;
};

// Necessary conditions for the optimal rectangle in a set that is symmetric
// about the given axis: (1) the axis crosses the rectangle interior; (2) a
// boundary corner on each side of the axis unless a corner sits on an end of
// the symmetry chord; (3) a square cannot keep three corners strictly on one
// side; (4) a diagonal on the axis forces a square or an edge angle in
// [pi/6, pi/4).
std::vector<AxialConditionVerdict> check_axial_symmetry(const AxisLine& axis,
                                                        const ConvexSet& set,
                                                        const Rectangle2D& rect, double tol);

}  // namespace inbox
