#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "inbox/errors.hpp"

namespace inbox {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

// p.x <= b with p nonzero.
struct LinearIneq {
    VectorXd p;
    double b = 0.0;
};

// x^T A x + 2 b^T x + c <= 0 with A symmetric PSD. Inputs are symmetrized
// as (A + A^T)/2 before the PSD check.
struct QuadraticIneq {
    MatrixXd A;
    VectorXd b;
    double c = 0.0;
};

using Inequality = std::variant<LinearIneq, QuadraticIneq>;

// Counter-clockwise, strictly convex vertex chain. Build via make_polygon().
struct Polygon2D {
    std::vector<Vector2d> vertices;
};

// Validates vertex count, orientation, and strict convexity at every turn.
Polygon2D make_polygon(std::vector<Vector2d> vertices);

double polygon_scale(const Polygon2D& poly);

// Finite list of convex inequalities, optionally backed by the polygon it
// was derived from (2-D only). Compactness is checked lazily by the ops
// that need it.
struct ConvexSet {
    int dim = 0;
    std::vector<Inequality> ineqs;
    std::optional<Polygon2D> polygon;

    int n() const { return static_cast<int>(ineqs.size()); }
};

ConvexSet make_convex_set(int dim, std::vector<Inequality> ineqs);

// Axis-aligned box x^l <= x <= x^u.
struct BoxRegion {
    VectorXd xl;
    VectorXd xu;

    double volume() const;
};

// Rectangle anchored at x with orthogonal edge vectors u, v. Corners in
// cyclic order: x, x+u, x+u+v, x+v (ccw when cross(u, v) > 0).
struct Rectangle2D {
    Vector2d x;
    Vector2d u;
    Vector2d v;

    double area() const { return std::abs(u.x() * v.y() - u.y() * v.x()); }
    Vector2d center() const { return x + 0.5 * (u + v); }
    std::array<Vector2d, 4> corners() const;
};

// Signed constraint residual: p.x - b, or x^T A x + 2 b^T x + c.
double residual(const Inequality& iq, const VectorXd& x);

bool contains(const ConvexSet& set, const VectorXd& x, double tol);
// Signed inward distances against unit edge normals.
bool polygon_contains(const Polygon2D& poly, const Vector2d& x, double tol);

// One inward halfspace per edge, unit normals; keeps the polygon attached.
ConvexSet polygon_to_halfspaces(const Polygon2D& poly);

// Maximizer of dir.x. Polygon: exact over vertices, ties broken toward the
// lexicographically largest point. Inequality form: barrier solve to 1e-8;
// divergence raises UnboundedError.
Vector2d support_point(const Polygon2D& poly, const Vector2d& dir);
VectorXd support_point(const ConvexSet& set, const VectorXd& dir,
                       const VectorXd* start_hint = nullptr);

// Strictly interior point: candidate probes, then a phase-I barrier solve.
VectorXd interior_point(const ConvexSet& set);

BoxRegion bounding_box(const ConvexSet& set);

// max(1, bbox extent); the reference length for relative tolerances.
double set_scale(const ConvexSet& set);
double box_scale(const BoxRegion& box);

struct DiameterResult {
    double value = 0.0;
    Vector2d a;
    Vector2d b;
};

// Rotating calipers over antipodal vertex pairs, linear time.
DiameterResult diameter(const Polygon2D& poly);

// Shoelace area, strictly positive for a valid polygon.
double area(const Polygon2D& poly);

// Point where the ray x0 + s*dir (s >= 0) leaves the set; x0 must be
// strictly inside. Used for boundary sampling and SVG rendering.
VectorXd boundary_point(const ConvexSet& set, const VectorXd& x0, const VectorXd& dir);

}  // namespace inbox
