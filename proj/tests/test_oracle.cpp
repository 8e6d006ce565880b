#include <doctest.h>

#include <cmath>

#include "inbox/oracle.hpp"
#include "testutil.hpp"

using namespace inbox;
namespace tu = inbox::testutil;

TEST_CASE("grid validation") {
    GridSpec bad;
    bad.anchor_steps = 1;
    CHECK_THROWS_AS(brute_maair(tu::unit_disk(), 0.0, bad), InputError);
    CHECK_THROWS_AS(brute_maair(tu::unit_disk(), 1.5, GridSpec{}), InputError);
}

TEST_CASE("brute_maair closed cases") {
    GridSpec grid;
    grid.anchor_steps = 64;
    grid.size_steps = 64;
    SUBCASE("unit square at t=0 finds the square itself") {
        const ConvexSet square = polygon_to_halfspaces(tu::unit_square_polygon());
        const OracleRect r = brute_maair(square, 0.0, grid);
        CHECK(r.area >= 0.96);
        CHECK(r.area <= 1.0 + 1e-12);
    }
    SUBCASE("triangle at t=0 lands in [0.245, 0.25]") {
        const ConvexSet tri = polygon_to_halfspaces(tu::unit_triangle());
        GridSpec fine;
        fine.anchor_steps = 128;
        fine.size_steps = 128;
        const OracleRect r = brute_maair(tri, 0.0, fine);
        CHECK(r.area >= 0.245);
        CHECK(r.area <= 0.25 + 1e-12);
    }
    SUBCASE("feasibility of the reported rectangle") {
        const ConvexSet poly = polygon_to_halfspaces(tu::random_convex_polygon(111));
        const OracleRect r = brute_maair(poly, 0.4, grid);
        REQUIRE(r.area > 0.0);
        for (const auto& c : r.rect.corners()) {
            VectorXd p(2);
            p << c.x(), c.y();
            CHECK(contains(poly, p, 1e-12));
        }
        CHECK(r.rect.area() == doctest::Approx(r.area));
    }
}

TEST_CASE("refinement monotonicity on nested grids") {
    const ConvexSet poly = polygon_to_halfspaces(tu::random_convex_polygon(113));
    double prev = 0.0;
    for (int steps : {8, 16, 32, 64}) {
        GridSpec grid;
        grid.anchor_steps = steps;
        grid.size_steps = steps;
        const double area = brute_maair(poly, 0.3, grid).area;
        CHECK(area >= prev - 1e-15);
        prev = area;
    }
}

TEST_CASE("parallel oracle equals the serial reference") {
    const ConvexSet poly = polygon_to_halfspaces(tu::random_convex_polygon(115));
    GridSpec grid;
    grid.anchor_steps = 40;
    grid.size_steps = 40;
    const OracleRect serial = brute_maair(poly, -0.35, grid, 1);
    const OracleRect parallel = brute_maair(poly, -0.35, grid, 4);
    CHECK(serial.area == parallel.area);
    CHECK(serial.rect.x == parallel.rect.x);
    CHECK(serial.rect.u == parallel.rect.u);
    CHECK(serial.rect.v == parallel.rect.v);
}

TEST_CASE("brute_mair brackets") {
    SUBCASE("unit disk") {
        GridSpec grid;
        grid.anchor_steps = 160;
        grid.size_steps = 160;
        grid.angle_steps = 2;  // the disk is rotation invariant
        const OracleRect r = brute_mair(tu::unit_disk(), grid);
        CHECK(r.area >= 1.96);
        CHECK(r.area <= 2.0 + 1e-12);
    }
    SUBCASE("unit square winner near theta = 0") {
        GridSpec grid;
        grid.anchor_steps = 48;
        grid.size_steps = 48;
        grid.angle_steps = 8;
        const ConvexSet square = polygon_to_halfspaces(tu::unit_square_polygon());
        const OracleRect r = brute_mair(square, grid);
        CHECK(r.area >= 0.98);
        CHECK(r.area <= 1.0 + 1e-12);
        const double theta = std::atan2(r.rect.u.y(), r.rect.u.x());
        CHECK(std::abs(theta) <= (tu::kPi / 2.0) / 8.0 + 1e-12);
    }
}

TEST_CASE("monte_carlo_area") {
    SUBCASE("unit square is exact (bbox equals the set)") {
        const auto est = monte_carlo_area(tu::unit_square_halfspaces(), 10000, 42);
        CHECK(est.estimate == doctest::Approx(1.0));
        CHECK(est.stderr_ == doctest::Approx(0.0));
    }
    SUBCASE("unit disk estimates pi within 3 sigma") {
        const auto est = monte_carlo_area(tu::unit_disk(), 1000000, 2024);
        CHECK(std::abs(est.estimate - tu::kPi) <= 3.0 * est.stderr_);
        CHECK(est.stderr_ > 0.0);
    }
    SUBCASE("same seed reproduces bit-identically") {
        const auto a = monte_carlo_area(tu::unit_disk(), 200000, 7);
        const auto b = monte_carlo_area(tu::unit_disk(), 200000, 7);
        CHECK(a.estimate == b.estimate);
        CHECK(a.stderr_ == b.stderr_);
    }
    SUBCASE("rejects tiny sample counts") {
        CHECK_THROWS_AS(monte_carlo_area(tu::unit_disk(), 50, 1), InputError);
    }
}
