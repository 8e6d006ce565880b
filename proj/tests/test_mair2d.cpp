#include <doctest.h>

#include <cmath>

#include "inbox/mair2d.hpp"
#include "inbox/mvair.hpp"
#include "inbox/oracle.hpp"
#include "testutil.hpp"

using namespace inbox;
namespace tu = inbox::testutil;

TEST_CASE("build_qt structure") {
    const ConvexSet square = polygon_to_halfspaces(tu::unit_square_polygon());
    const BarrierProblem p = build_qt(square, 0.3);
    CHECK(p.dim == 4);
    CHECK(p.n_barrier() == 4 * square.n());
    CHECK_THROWS_AS(build_qt(square, 1.5), InputError);

    // at t=0 the corner constraints reduce to axis-aligned box corners
    const BarrierProblem p0 = build_qt(square, 0.0);
    VectorXd z(4);
    z << 0.5, 0.25, 0.1, 0.2;  // (u1, v2, x1, x2)
    // corner x+u+v = (0.6, 0.45) must satisfy x <= 1 etc.
    CHECK(p0.strictly_feasible(z));
}

TEST_CASE("maair_direction closed forms") {
    const ConvexSet square = polygon_to_halfspaces(tu::unit_square_polygon());
    SUBCASE("unit square, t=0") {
        const DirectionSample s = maair_direction(square, 0.0);
        CHECK(s.area == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(s.theta == doctest::Approx(0.0));
    }
    SUBCASE("unit square, t=1: the 45-degree inscribed square") {
        const DirectionSample s = maair_direction(square, 1.0);
        CHECK(s.area == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("unit disk, any t") {
        const ConvexSet disk = tu::unit_disk();
        for (double t : {-0.7, 0.0, 0.33, 1.0}) {
            const DirectionSample s = maair_direction(disk, t);
            CHECK(s.area == doctest::Approx(2.0).epsilon(1e-4));
        }
    }
}

TEST_CASE("direction consistency and orthogonality invariants") {
    const ConvexSet poly = polygon_to_halfspaces(tu::random_convex_polygon(41));
    for (double t : {-0.8, -0.2, 0.0, 0.5, 1.0}) {
        const DirectionSample s = maair_direction(poly, t);
        CHECK(std::abs(s.rect.u.dot(s.rect.v)) <=
              1e-9 * s.rect.u.norm() * s.rect.v.norm());
        const double angle = std::atan2(s.rect.u.y(), s.rect.u.x());
        CHECK(angle == doctest::Approx(std::atan(t)).epsilon(1e-9));
        CHECK(s.area > 0.0);
        // all four corners contained
        const double tol = 1e-6 * set_scale(poly);
        for (const auto& c : s.rect.corners()) {
            VectorXd p(2);
            p << c.x(), c.y();
            CHECK(contains(poly, p, tol));
        }
    }
}

TEST_CASE("t=0 recovers the MVAIR") {
    for (std::uint64_t seed : {61u, 62u}) {
        const ConvexSet set = polygon_to_halfspaces(tu::random_convex_polygon(seed));
        const double maair = maair_direction(set, 0.0).area;
        const double mvair = solve_mvair(set).box.volume();
        CHECK(maair == doctest::Approx(mvair).epsilon(1e-6));
    }
}

TEST_CASE("quarter-turn identity: rotating the set by pi/2 preserves areas") {
    const ConvexSet poly = polygon_to_halfspaces(tu::random_convex_polygon(43));
    const ConvexSet rotated = rotate_set(poly, tu::kPi / 2.0);
    for (double t : {-1.0, 0.0, 1.0}) {
        const double a = maair_direction(poly, t).area;
        const double b = maair_direction(rotated, t).area;
        CHECK(b == doctest::Approx(a).epsilon(1e-6));
    }
}

TEST_CASE("aspect_ratio_bound") {
    SUBCASE("unit square: 4*diam^2/area = 8") {
        CHECK(aspect_ratio_bound(tu::unit_square_polygon()) == doctest::Approx(8.0));
    }
    SUBCASE("fine inscribed 512-gon of the disk approaches 16/pi") {
        const double bound = aspect_ratio_bound(tu::regular_polygon(512));
        CHECK(bound == doctest::Approx(16.0 / tu::kPi).epsilon(2e-4));
        CHECK(bound < 5.1);
    }
    SUBCASE("general-set path for the disk: 16*sqrt(2)*AR(R')") {
        const double bound = aspect_ratio_bound(tu::unit_disk());
        CHECK(bound == doctest::Approx(16.0 * std::sqrt(2.0)).epsilon(1e-3));
    }
    SUBCASE("bound dominates the winner's aspect ratio") {
        for (std::uint64_t seed = 70; seed < 80; ++seed) {
            const Polygon2D poly = tu::random_convex_polygon(seed);
            const ConvexSet set = polygon_to_halfspaces(poly);
            const SweepResult sweep = mair_sweep(set, 0.05);
            const double w = sweep.best.u.norm();
            const double h = sweep.best.v.norm();
            const double ar = std::max(w, h) / std::min(w, h);
            CHECK(ar <= aspect_ratio_bound(poly));
        }
    }
}

TEST_CASE("mair_sweep direction count") {
    // rho=5.1, eps=0.1: ceil((pi/2) / (0.1/10.2)) = 161
    const double rho = 5.1, eps = 0.1;
    const double alpha = eps / (2.0 * rho);
    CHECK(static_cast<int>(std::ceil((tu::kPi / 2.0) / alpha)) == 161);
}

TEST_CASE("mair_sweep on the unit disk reaches 2/pi") {
    const SweepResult sweep = mair_sweep(tu::unit_disk(), 0.01);
    CHECK(sweep.all_converged);
    const double ratio = sweep.samples[sweep.winner_index].area / tu::kPi;
    CHECK(ratio == doctest::Approx(2.0 / tu::kPi).epsilon(0.01));
    // center of the winner sits at the symmetry center
    CHECK(sweep.best.center().norm() <= 1e-4);
}

TEST_CASE("sweep guarantee against the oracle and Lassak bound") {
    GridSpec grid;
    grid.anchor_steps = 24;
    grid.size_steps = 24;
    grid.angle_steps = 16;
    for (std::uint64_t seed : {81u, 82u, 83u}) {
        const Polygon2D poly = tu::random_convex_polygon(seed, 5, 14);
        const ConvexSet set = polygon_to_halfspaces(poly);
        const double eps = 0.05;
        const SweepResult sweep = mair_sweep(set, eps);
        const double best = sweep.samples[sweep.winner_index].area;
        CHECK(best >= (1.0 - eps) * brute_mair(set, grid).area);
        CHECK(best >= (1.0 - eps) * area(poly) / 2.0);
    }
}

TEST_CASE("sweep winner is thread-count invariant") {
    const ConvexSet set = polygon_to_halfspaces(tu::random_convex_polygon(85));
    const SweepResult serial = mair_sweep(set, 0.05, {}, 1);
    const SweepResult parallel = mair_sweep(set, 0.05, {}, 4);
    CHECK(serial.winner_index == parallel.winner_index);
    CHECK(serial.best.x == parallel.best.x);
    CHECK(serial.best.u == parallel.best.u);
    CHECK(serial.best.v == parallel.best.v);
    REQUIRE(serial.samples.size() == parallel.samples.size());
    for (size_t k = 0; k < serial.samples.size(); ++k) {
        CHECK(serial.samples[k].area == parallel.samples[k].area);
    }
}

TEST_CASE("argmax stability under uniform scaling") {
    const Polygon2D poly = tu::random_convex_polygon(87);
    const ConvexSet set = polygon_to_halfspaces(poly);
    const double s = 2.5;
    std::vector<Vector2d> scaled;
    for (const auto& v : poly.vertices) scaled.push_back(s * v);
    const ConvexSet big = polygon_to_halfspaces(make_polygon(scaled));

    const SweepResult base = mair_sweep(set, 0.05);
    const SweepResult grown = mair_sweep(big, 0.05);
    const double a0 = base.samples[base.winner_index].area;
    const double a1 = grown.samples[grown.winner_index].area;
    CHECK(a1 == doctest::Approx(s * s * a0).epsilon(1e-6));
    const double dtheta = std::abs(base.samples[base.winner_index].theta -
                                   grown.samples[grown.winner_index].theta);
    CHECK(dtheta <= (tu::kPi / 2.0) / base.directions + 1e-12);
}

TEST_CASE("central symmetry of winners on symmetric sets") {
    const ConvexSet shapes[] = {tu::ellipse_set(2.0, 1.0),
                                polygon_to_halfspaces(tu::regular_polygon(8))};
    for (const auto& set : shapes) {
        const SweepResult sweep = mair_sweep(set, 0.02);
        CHECK(sweep.best.center().norm() <= 1e-4 * set_scale(set));
    }
}

TEST_CASE("f_profile") {
    SUBCASE("endpoints coincide") {
        for (std::uint64_t seed : {91u, 92u}) {
            const ConvexSet set = polygon_to_halfspaces(tu::random_convex_polygon(seed));
            const auto prof = f_profile(set, 9);
            REQUIRE(prof.size() == 9);
            CHECK(prof.front().t == -1.0);
            CHECK(prof.back().t == 1.0);
            CHECK(std::abs(prof.front().area - prof.back().area) <=
                  1e-5 * prof.back().area);
            for (const auto& s : prof) CHECK(s.area > 0.0);
        }
    }
    SUBCASE("unit square: f(0) = 1 dominates") {
        const ConvexSet square = polygon_to_halfspaces(tu::unit_square_polygon());
        const auto prof = f_profile(square, 9);
        const double f0 = prof[4].area;  // t = 0
        CHECK(f0 == doctest::Approx(1.0).epsilon(1e-6));
        for (const auto& s : prof) CHECK(f0 >= s.area - 1e-9);
    }
    SUBCASE("rejects fewer than 2 samples") {
        CHECK_THROWS_AS(f_profile(tu::unit_disk(), 1), InputError);
    }
}
