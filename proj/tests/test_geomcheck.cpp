#include <doctest.h>

#include <cmath>

#include "inbox/geomcheck.hpp"
#include "inbox/mair2d.hpp"
#include "testutil.hpp"

using namespace inbox;
namespace tu = inbox::testutil;

namespace {

Rectangle2D rect(double x0, double y0, double ux, double uy, double vx, double vy) {
    Rectangle2D r;
    r.x = Vector2d(x0, y0);
    r.u = Vector2d(ux, uy);
    r.v = Vector2d(vx, vy);
    return r;
}

}  // namespace

TEST_CASE("classify_corner") {
    const Polygon2D square = tu::unit_square_polygon();
    const auto vertex = classify_corner(square, Vector2d(1, 1), 1e-6);
    CHECK(vertex.kind == CornerKind::VertexCorner);
    CHECK(vertex.witness == 2);

    const auto edge = classify_corner(square, Vector2d(0.5, 0), 1e-6);
    CHECK(edge.kind == CornerKind::EdgeCorner);
    CHECK(edge.witness == 0);

    const auto inside = classify_corner(square, Vector2d(0.5, 0.5), 1e-6);
    CHECK(inside.kind == CornerKind::InteriorCorner);
    CHECK(inside.residual == doctest::Approx(0.5));

    CHECK_THROWS_AS(classify_corner(square, Vector2d(2, 2), 1e-6), InputError);
}

TEST_CASE("classification is tolerance-monotone") {
    const Polygon2D poly = tu::random_convex_polygon(101);
    std::mt19937_64 rng(3);
    const ConvexSet set = polygon_to_halfspaces(poly);
    const BoxRegion bbox = bounding_box(set);
    auto rank = [](CornerKind k) {
        return k == CornerKind::InteriorCorner ? 0 : k == CornerKind::EdgeCorner ? 1 : 2;
    };
    for (int it = 0; it < 200; ++it) {
        const VectorXd p = tu::sample_inside(set, bbox, rng);
        int prev = 0;
        for (double tol : {1e-9, 1e-4, 1e-2, 0.1, 0.5}) {
            const auto c = classify_corner(poly, Vector2d(p(0), p(1)), tol);
            CHECK(rank(c.kind) >= prev);
            prev = rank(c.kind);
        }
    }
}

TEST_CASE("check_polygon_optimality") {
    SUBCASE("triangle MAIR has four boundary corners: Case 1") {
        const Polygon2D tri = tu::unit_triangle();
        const auto v = check_polygon_optimality(
            tri, rect(0, 0, 0.5, 0, 0, 0.5), 1e-6);
        CHECK(v.verdict == OptimalityCase::Case1_NoInterior);
    }
    SUBCASE("two adjacent interior corners violate") {
        const Polygon2D square = tu::unit_square_polygon();
        const auto v = check_polygon_optimality(
            square, rect(0.2, 0.0, 0.6, 0, 0, 0.5), 1e-6);
        CHECK(v.verdict == OptimalityCase::Violation);
    }
    SUBCASE("one interior corner with an adjacent vertex-corner: Case 2") {
        // unit-square corners against a quadrilateral picked so that
        // (0,0) and (0,1) are edge-corners, (1,0) a vertex, (1,1) interior
        const Polygon2D poly = make_polygon(
            {{-0.5, 0.0}, {1.0, 0.0}, {1.5, 1.5}, {-0.5, 5.0 / 6.0}});
        const auto v = check_polygon_optimality(poly, rect(0, 0, 1, 0, 0, 1), 1e-9);
        CHECK(v.verdict == OptimalityCase::Case2_OneInteriorAdjacentVertex);
        CHECK(v.corners[1].kind == CornerKind::VertexCorner);
        CHECK(v.corners[2].kind == CornerKind::InteriorCorner);
    }
    SUBCASE("one interior corner without an adjacent vertex-corner violates") {
        const Polygon2D square = tu::unit_square_polygon();
        // (0,0) vertex diagonal to the interior corner (0.9, 0.8)
        const auto v = check_polygon_optimality(
            square, rect(0, 0, 0.9, 0, 0, 0.8), 1e-6);
        CHECK(v.verdict == OptimalityCase::Violation);
    }
    SUBCASE("stretched rhombus: diagonal square is Case 3") {
        const Polygon2D rhombus = tu::stretched_rhombus(0.05);
        const auto v = check_polygon_optimality(
            rhombus, rect(1, 0, -1, 1, -1, -1), 1e-3 * polygon_scale(rhombus));
        CHECK(v.verdict == OptimalityCase::Case3_TwoDiagonalInteriorSquare);
    }
}

TEST_CASE("check_central_symmetry") {
    const auto disk_winner = rect(-0.7, -0.7, 1.4, 0, 0, 1.4);
    CHECK(check_central_symmetry(Vector2d(0, 0), disk_winner, 1e-4).pass);

    const auto shifted = rect(0.2, 0.2, 0.3, 0, 0, 0.3);
    const auto v = check_central_symmetry(Vector2d(0, 0), shifted, 1e-4);
    CHECK_FALSE(v.pass);
    CHECK(v.offset == doctest::Approx(std::hypot(0.35, 0.35)));
    CHECK(check_central_symmetry(Vector2d(0, 0), shifted, 1.0).pass);
}

TEST_CASE("check_axial_symmetry") {
    const Polygon2D rhombus = tu::stretched_rhombus(0.05);
    const ConvexSet set = polygon_to_halfspaces(rhombus);
    const AxisLine x_axis{Vector2d(0, 0), Vector2d(1, 0)};
    const double tol = 1e-3 * polygon_scale(rhombus);

    SUBCASE("rotated square with diagonal on the axis passes all conditions") {
        const auto vs = check_axial_symmetry(x_axis, set, rect(1, 0, -1, 1, -1, -1), tol);
        REQUIRE(vs.size() == 4);
        for (const auto& v : vs) CHECK(v.pass);
        CHECK(vs[3].applicable);  // diagonal-on-axis case triggered
    }
    SUBCASE("axis-aligned MAIR of an isosceles triangle: condition 1") {
        const Polygon2D tri = make_polygon({{0, 0}, {1, 0}, {0.5, 0.8}});
        const ConvexSet tri_set = polygon_to_halfspaces(tri);
        const AxisLine bisector{Vector2d(0.5, 0.0), Vector2d(0, 1)};
        const DirectionSample best = maair_direction(tri_set, 0.0);
        const auto vs = check_axial_symmetry(bisector, tri_set, best.rect,
                                             1e-3 * polygon_scale(tri));
        CHECK(vs[0].pass);
        CHECK(vs[0].residual > 0.1);  // chord clearly crosses the rectangle
    }
    SUBCASE("rectangle entirely above the axis fails condition 1") {
        const auto vs = check_axial_symmetry(x_axis, set, rect(-0.2, 0.3, 0.4, 0, 0, 0.3), tol);
        CHECK_FALSE(vs[0].pass);
    }
}

TEST_CASE("condition 4 angle window") {
    // rectangle with diagonal exactly on the x-axis, edge angle alpha
    auto diagonal_rect = [](double alpha, double diag) {
        const double w = diag * std::cos(alpha);
        const double h = diag * std::sin(alpha);
        Rectangle2D r;
        r.x = Vector2d(0, 0);
        r.u = w * Vector2d(std::cos(alpha), -std::sin(alpha));
        r.v = h * Vector2d(std::sin(alpha), std::cos(alpha));
        return r;  // corners (0,0) and (diag, 0) sit on the axis
    };
    const Polygon2D big = tu::regular_polygon(16, 4.0);
    const ConvexSet set = polygon_to_halfspaces(big);
    const AxisLine x_axis{Vector2d(0, 0), Vector2d(1, 0)};
    const double tol = 1e-6;

    auto cond4 = [&](double alpha) {
        const auto vs = check_axial_symmetry(x_axis, set, diagonal_rect(alpha, 2.0), tol);
        REQUIRE(vs[3].applicable);
        return vs[3].pass;
    };
    CHECK_FALSE(cond4(0.2));            // ~11.5 deg: outside [pi/6, pi/4)
    CHECK(cond4(tu::kPi / 6.0 + 0.01));  // inside the window
    CHECK(cond4(tu::kPi / 4.0));         // square
}

TEST_CASE("fixed-diagonal rectangles: the square maximizes area") {
    const double diag = 2.0;
    double best_area = 0.0, best_theta = 0.0;
    for (int k = 0; k <= 900; ++k) {
        const double theta = (tu::kPi / 2.0) * k / 900.0;
        const double area = diag * diag * std::sin(theta) * std::cos(theta);
        if (area > best_area) {
            best_area = area;
            best_theta = theta;
        }
    }
    CHECK(best_theta == doctest::Approx(tu::kPi / 4.0).epsilon(1e-2));
    CHECK(best_area == doctest::Approx(0.5 * diag * diag).epsilon(1e-4));
}
