#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "inbox/convexset.hpp"

namespace inbox::testutil {

constexpr double kPi = 3.14159265358979323846;

inline double cross2(const Vector2d& a, const Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// Andrew monotone chain, ccw hull without collinear points.
inline std::vector<Vector2d> convex_hull(std::vector<Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vector2d& a, const Vector2d& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vector2d& a, const Vector2d& b) { return a == b; }),
              pts.end());
    const size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vector2d> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
        hull[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Seeded convex polygon with a vertex count in [min_v, max_v]: hull of
// points at random angles/radii, retried deterministically until the count
// lands in range.
inline Polygon2D random_convex_polygon(std::uint64_t seed, int min_v = 5, int max_v = 30) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> radius(0.6, 1.4);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::uniform_int_distribution<int> count(min_v, max_v);
        const int target = count(rng);
        std::vector<double> angles(target + 6);
        for (auto& a : angles) a = angle(rng);
        std::sort(angles.begin(), angles.end());
        std::vector<Vector2d> pts;
        pts.reserve(angles.size());
        for (double a : angles) {
            const double r = radius(rng);
            pts.emplace_back(r * std::cos(a), r * std::sin(a));
        }
        auto hull = convex_hull(pts);
        if ((int)hull.size() >= min_v && (int)hull.size() <= max_v) {
            return make_polygon(std::move(hull));
        }
    }
    throw std::runtime_error("random_convex_polygon: generation failed");
}

// Exactly n vertices on the unit circle at random, well-separated angles.
inline Polygon2D random_cocircular_polygon(std::uint64_t seed, int n, double radius = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::vector<double> angles(n);
    while (true) {
        for (auto& a : angles) a = angle(rng);
        std::sort(angles.begin(), angles.end());
        double min_gap = angles.front() + 2.0 * kPi - angles.back();
        for (int i = 1; i < n; ++i) min_gap = std::min(min_gap, angles[i] - angles[i - 1]);
        if (min_gap > 1e-3) break;
    }
    std::vector<Vector2d> verts;
    verts.reserve(n);
    for (double a : angles) verts.emplace_back(radius * std::cos(a), radius * std::sin(a));
    return make_polygon(std::move(verts));
}

inline Polygon2D regular_polygon(int n, double radius = 1.0) {
    std::vector<Vector2d> verts;
    verts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * kPi * k / n;
        verts.emplace_back(radius * std::cos(a), radius * std::sin(a));
    }
    return make_polygon(std::move(verts));
}

inline Polygon2D unit_square_polygon() {
    return make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
}

inline Polygon2D unit_triangle() {
    return make_polygon({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
}

// Unit square as explicit halfspaces 0 <= x_j <= 1 (no polygon backing).
inline ConvexSet unit_square_halfspaces() {
    std::vector<Inequality> ineqs;
    for (int j = 0; j < 2; ++j) {
        LinearIneq hi, lo;
        hi.p = VectorXd::Zero(2);
        hi.p(j) = 1.0;
        hi.b = 1.0;
        lo.p = VectorXd::Zero(2);
        lo.p(j) = -1.0;
        lo.b = 0.0;
        ineqs.emplace_back(hi);
        ineqs.emplace_back(lo);
    }
    return make_convex_set(2, std::move(ineqs));
}

inline ConvexSet hypercube(int d) {
    std::vector<Inequality> ineqs;
    for (int j = 0; j < d; ++j) {
        LinearIneq hi, lo;
        hi.p = VectorXd::Zero(d);
        hi.p(j) = 1.0;
        hi.b = 1.0;
        lo.p = VectorXd::Zero(d);
        lo.p(j) = -1.0;
        lo.b = 0.0;
        ineqs.emplace_back(hi);
        ineqs.emplace_back(lo);
    }
    return make_convex_set(d, std::move(ineqs));
}

// Ellipse x^T diag(1/a^2, 1/b^2) x <= 1.
inline ConvexSet ellipse_set(double a, double b) {
    QuadraticIneq q;
    q.A = MatrixXd::Zero(2, 2);
    q.A(0, 0) = 1.0 / (a * a);
    q.A(1, 1) = 1.0 / (b * b);
    q.b = VectorXd::Zero(2);
    q.c = -1.0;
    return make_convex_set(2, {q});
}

inline ConvexSet unit_disk() { return ellipse_set(1.0, 1.0); }

// Rhombus (+-(1+delta), 0), (0, +-1): a 45-degree square stretched along x.
inline Polygon2D stretched_rhombus(double delta) {
    return make_polygon({{1.0 + delta, 0.0}, {0.0, 1.0}, {-(1.0 + delta), 0.0}, {0.0, -1.0}});
}

// Uniform point inside the set by rejection from the bounding box.
inline VectorXd sample_inside(const ConvexSet& set, const BoxRegion& bbox, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    VectorXd p(set.dim);
    for (int guard = 0; guard < 100000; ++guard) {
        for (int j = 0; j < set.dim; ++j) {
            p(j) = bbox.xl(j) + u01(rng) * (bbox.xu(j) - bbox.xl(j));
        }
        if (contains(set, p, 0.0)) return p;
    }
    throw std::runtime_error("sample_inside: rejection sampling failed");
}

// Near-exact axis-aligned MAAIR oracle for 2-D all-linear sets: for fixed
// (xl1, xu1) the best height is a closed-form min/max of affine bounds, and
// log-volume is concave over (xl1, xu1), so grid search plus zooming
// converges to the true optimum. Independent of the barrier machinery.
inline double axis_box_oracle(const ConvexSet& set, const BoxRegion& bbox, int steps = 256,
                              int zooms = 3) {
    struct Row {
        double pu1, pl1, pu2, pl2, b;
    };
    std::vector<Row> rows;
    for (const auto& iq : set.ineqs) {
        const auto& lin = std::get<LinearIneq>(iq);
        rows.push_back({std::max(lin.p(0), 0.0), std::max(-lin.p(0), 0.0),
                        std::max(lin.p(1), 0.0), std::max(-lin.p(1), 0.0), lin.b});
    }
    auto volume = [&](double xl1, double xu1) {
        if (xu1 <= xl1) return -1.0;
        double top = bbox.xu(1), bottom = bbox.xl(1);
        for (const Row& r : rows) {
            const double used = r.pu1 * xu1 - r.pl1 * xl1;
            if (r.pu2 > 0.0) top = std::min(top, (r.b - used) / r.pu2);
            if (r.pl2 > 0.0) bottom = std::max(bottom, (used - r.b) / r.pl2);
            if (r.pu2 == 0.0 && r.pl2 == 0.0 && used > r.b) return -1.0;
        }
        return top > bottom ? (xu1 - xl1) * (top - bottom) : -1.0;
    };
    double lo_l = bbox.xl(0), hi_l = bbox.xu(0);
    double lo_u = bbox.xl(0), hi_u = bbox.xu(0);
    double best = 0.0;
    for (int zoom = 0; zoom <= zooms; ++zoom) {
        double best_l = lo_l, best_u = hi_u;
        for (int i = 0; i <= steps; ++i) {
            const double xl1 = lo_l + (hi_l - lo_l) * i / steps;
            for (int j = 0; j <= steps; ++j) {
                const double xu1 = lo_u + (hi_u - lo_u) * j / steps;
                const double v = volume(xl1, xu1);
                if (v > best) {
                    best = v;
                    best_l = xl1;
                    best_u = xu1;
                }
            }
        }
        const double cell_l = 2.0 * (hi_l - lo_l) / steps;
        const double cell_u = 2.0 * (hi_u - lo_u) / steps;
        lo_l = best_l - cell_l;
        hi_l = best_l + cell_l;
        lo_u = best_u - cell_u;
        hi_u = best_u + cell_u;
    }
    return best;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit f;
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double pred = f.intercept + f.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace inbox::testutil
