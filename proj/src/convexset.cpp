#include "inbox/convexset.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "inbox/barrier.hpp"

namespace inbox {

namespace {

double cross2(const Vector2d& a, const Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool lex_greater(const Vector2d& a, const Vector2d& b) {
    if (a.x() != b.x()) return a.x() > b.x();
    return a.y() > b.y();
}

BarrierConstraint to_barrier(const Inequality& iq) {
    BarrierConstraint g;
    if (const auto* lin = std::get_if<LinearIneq>(&iq)) {
        g.a = lin->p;
        g.c = -lin->b;
    } else {
        const auto& q = std::get<QuadraticIneq>(iq);
        g.A = q.A;
        g.a = 2.0 * q.b;
        g.c = q.c;
    }
    return g;
}

}  // namespace

Polygon2D make_polygon(std::vector<Vector2d> vertices) {
    if (vertices.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
    double scale = 1.0;
    for (const auto& v : vertices) scale = std::max({scale, std::abs(v.x()), std::abs(v.y())});
    const size_t m = vertices.size();
    for (size_t i = 0; i < m; ++i) {
        const Vector2d& a = vertices[i];
        const Vector2d& b = vertices[(i + 1) % m];
        const Vector2d& c = vertices[(i + 2) % m];
        const double turn = cross2(b - a, c - b);
        if (turn <= 1e-12 * scale * scale) {
            throw ValidationError("polygon not strictly convex and counter-clockwise at vertex " +
                                  std::to_string((i + 1) % m));
        }
    }
    Polygon2D poly;
    poly.vertices = std::move(vertices);
    return poly;
}

double polygon_scale(const Polygon2D& poly) {
    double scale = 1.0;
    for (const auto& v : poly.vertices) scale = std::max({scale, std::abs(v.x()), std::abs(v.y())});
    return scale;
}

ConvexSet make_convex_set(int dim, std::vector<Inequality> ineqs) {
    if (dim < 1) throw ValidationError("set dimension must be positive");
    if (ineqs.empty()) throw ValidationError("set needs at least one inequality");
    for (auto& iq : ineqs) {
        if (auto* lin = std::get_if<LinearIneq>(&iq)) {
            if (lin->p.size() != dim) throw ValidationError("linear inequality dimension mismatch");
            if (lin->p.lpNorm<Eigen::Infinity>() == 0.0) {
                throw ValidationError("linear inequality has zero normal");
            }
        } else {
            auto& q = std::get<QuadraticIneq>(iq);
            if (q.A.rows() != dim || q.A.cols() != dim || q.b.size() != dim) {
                throw ValidationError("quadratic inequality dimension mismatch");
            }
            const double norm_a = q.A.norm();
            q.A = 0.5 * (q.A + q.A.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(q.A, Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, norm_a)) {
                throw ValidationError("quadratic inequality matrix is not positive semidefinite");
            }
        }
    }
    ConvexSet set;
    set.dim = dim;
    set.ineqs = std::move(ineqs);
    return set;
}

double BoxRegion::volume() const {
    double v = 1.0;
    for (Eigen::Index j = 0; j < xl.size(); ++j) v *= xu(j) - xl(j);
    return v;
}

std::array<Vector2d, 4> Rectangle2D::corners() const {
    return {x, x + u, x + u + v, x + v};
}

double residual(const Inequality& iq, const VectorXd& x) {
    if (const auto* lin = std::get_if<LinearIneq>(&iq)) return lin->p.dot(x) - lin->b;
    // allocation-free x^T A x + 2 b^T x + c; hottest call in the oracles
    const auto& q = std::get<QuadraticIneq>(iq);
    const Eigen::Index m = q.A.rows();
    double quad = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        double row = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) row += q.A(j, k) * x(k);
        quad += x(j) * row;
    }
    return quad + 2.0 * q.b.dot(x) + q.c;
}

bool contains(const ConvexSet& set, const VectorXd& x, double tol) {
    if (x.size() != set.dim) throw InputError("contains: point dimension mismatch");
    if (tol < 0.0) throw InputError("contains: tolerance must be nonnegative");
    for (const auto& iq : set.ineqs) {
        if (residual(iq, x) > tol) return false;
    }
    return true;
}

bool polygon_contains(const Polygon2D& poly, const Vector2d& x, double tol) {
    const size_t m = poly.vertices.size();
    for (size_t i = 0; i < m; ++i) {
        const Vector2d& a = poly.vertices[i];
        const Vector2d e = poly.vertices[(i + 1) % m] - a;
        const double inward = cross2(e, x - a) / e.norm();
        if (inward < -tol) return false;
    }
    return true;
}

ConvexSet polygon_to_halfspaces(const Polygon2D& poly) {
    const size_t m = poly.vertices.size();
    std::vector<Inequality> ineqs;
    ineqs.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        const Vector2d& a = poly.vertices[i];
        const Vector2d e = poly.vertices[(i + 1) % m] - a;
        Vector2d normal(e.y(), -e.x());  // outward for a ccw chain
        normal.normalize();
        LinearIneq lin;
        lin.p = normal;
        lin.b = normal.dot(a);
        ineqs.emplace_back(std::move(lin));
    }
    ConvexSet set = make_convex_set(2, std::move(ineqs));
    set.polygon = poly;
#ifndef NDEBUG
    const double tol = 1e-9 * polygon_scale(poly);
    for (const auto& v : poly.vertices) assert(contains(set, v, tol));
#endif
    return set;
}

Vector2d support_point(const Polygon2D& poly, const Vector2d& dir) {
    if (dir.lpNorm<Eigen::Infinity>() == 0.0) throw InputError("support_point: zero direction");
    Vector2d best = poly.vertices.front();
    double best_val = dir.dot(best);
    for (const auto& v : poly.vertices) {
        const double val = dir.dot(v);
        if (val > best_val || (val == best_val && lex_greater(v, best))) {
            best = v;
            best_val = val;
        }
    }
    return best;
}

namespace {

BarrierProblem membership_problem(const ConvexSet& set) {
    BarrierProblem p;
    p.dim = set.dim;
    p.log_w.resize(0, set.dim);
    p.log_d.resize(0);
    p.lin = VectorXd::Zero(set.dim);
    p.constraints.reserve(set.ineqs.size());
    for (const auto& iq : set.ineqs) p.constraints.push_back(to_barrier(iq));
    return p;
}

bool strictly_inside(const ConvexSet& set, const VectorXd& x, double margin) {
    for (const auto& iq : set.ineqs) {
        if (residual(iq, x) >= -margin) return false;
    }
    return true;
}

// Phase-I: maximize -s over {g_i(x) - s < 0, s < s_up, |x_j| < M}. A strictly
// negative optimum certifies a strictly interior point of the set.
VectorXd phase_one_interior(const ConvexSet& set) {
    const int d = set.dim;
    const double big = 1e7;
    VectorXd x_hat = VectorXd::Zero(d);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& iq : set.ineqs) worst = std::max(worst, residual(iq, x_hat));
    const double s_hat = worst + std::max(1.0, 0.1 * std::abs(worst));
    const double s_up = s_hat + std::max(1.0, std::abs(s_hat));

    BarrierProblem p;
    p.dim = d + 1;
    p.log_w.resize(0, d + 1);
    p.log_d.resize(0);
    p.lin = VectorXd::Zero(d + 1);
    p.lin(d) = -1.0;
    for (const auto& iq : set.ineqs) {
        BarrierConstraint g = to_barrier(iq);
        if (g.A.size() != 0) {
            MatrixXd lifted = MatrixXd::Zero(d + 1, d + 1);
            lifted.topLeftCorner(d, d) = g.A;
            g.A = std::move(lifted);
        }
        VectorXd a = VectorXd::Zero(d + 1);
        a.head(d) = g.a;
        a(d) = -1.0;
        g.a = std::move(a);
        p.constraints.push_back(std::move(g));
    }
    {
        BarrierConstraint cap;  // s - s_up < 0
        cap.a = VectorXd::Zero(d + 1);
        cap.a(d) = 1.0;
        cap.c = -s_up;
        p.constraints.push_back(std::move(cap));
    }
    for (int j = 0; j < d; ++j) {  // box keeps phase-I bounded
        BarrierConstraint lo, hi;
        lo.a = VectorXd::Zero(d + 1);
        lo.a(j) = -1.0;
        lo.c = -big;
        hi.a = VectorXd::Zero(d + 1);
        hi.a(j) = 1.0;
        hi.c = -big;
        p.constraints.push_back(std::move(lo));
        p.constraints.push_back(std::move(hi));
    }

    VectorXd y0(d + 1);
    y0.head(d) = x_hat;
    y0(d) = s_hat;
    SolverConfig cfg;
    cfg.eps = 1e-6;
    cfg.diverge_norm = 1e12;
    const SolverReport rep = path_follow(p, y0, cfg);
    if (rep.x_star(d) >= -1e-10) {
        throw InfeasibleError("interior_point: set has empty interior");
    }
    return rep.x_star.head(d);
}

}  // namespace

VectorXd interior_point(const ConvexSet& set) {
    if (set.polygon) {
        Vector2d centroid = Vector2d::Zero();
        for (const auto& v : set.polygon->vertices) centroid += v;
        centroid /= static_cast<double>(set.polygon->vertices.size());
        return centroid;
    }
    std::vector<VectorXd> candidates;
    candidates.push_back(VectorXd::Zero(set.dim));
    VectorXd center_sum = VectorXd::Zero(set.dim);
    int centers = 0;
    for (const auto& iq : set.ineqs) {
        if (const auto* q = std::get_if<QuadraticIneq>(&iq)) {
            Eigen::LLT<MatrixXd> llt(q->A);
            if (llt.info() == Eigen::Success) {
                const VectorXd c = llt.solve(-q->b);
                candidates.push_back(c);
                center_sum += c;
                ++centers;
            }
        }
    }
    if (centers > 1) candidates.push_back(center_sum / centers);
    for (const auto& x : candidates) {
        const double margin = 1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
        if (strictly_inside(set, x, margin)) return x;
    }
    return phase_one_interior(set);
}

VectorXd support_point(const ConvexSet& set, const VectorXd& dir, const VectorXd* start_hint) {
    if (dir.size() != set.dim) throw InputError("support_point: direction dimension mismatch");
    if (dir.lpNorm<Eigen::Infinity>() == 0.0) throw InputError("support_point: zero direction");
    if (set.polygon) {
        const Vector2d s = support_point(*set.polygon, Vector2d(dir(0), dir(1)));
        VectorXd out(2);
        out << s.x(), s.y();
        return out;
    }
    BarrierProblem p = membership_problem(set);
    p.lin = dir;
    const VectorXd x0 = start_hint ? *start_hint : interior_point(set);
    SolverConfig cfg;
    cfg.eps = 1e-8;
    try {
        return path_follow(p, x0, cfg).x_star;
    } catch (const ConditioningError&) {
        // A flat barrier Hessian on a support solve means a direction with no
        // curvature: the set is not compact.
        throw UnboundedError("support_point: set unbounded (barrier Hessian singular)");
    }
}

BoxRegion bounding_box(const ConvexSet& set) {
    BoxRegion box;
    box.xl.resize(set.dim);
    box.xu.resize(set.dim);
    if (set.polygon) {
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        for (const auto& v : set.polygon->vertices) {
            xmin = std::min(xmin, v.x());
            xmax = std::max(xmax, v.x());
            ymin = std::min(ymin, v.y());
            ymax = std::max(ymax, v.y());
        }
        box.xl << xmin, ymin;
        box.xu << xmax, ymax;
        return box;
    }
    const VectorXd x0 = interior_point(set);
    for (int j = 0; j < set.dim; ++j) {
        VectorXd dir = VectorXd::Zero(set.dim);
        dir(j) = 1.0;
        box.xu(j) = support_point(set, dir, &x0)(j);
        dir(j) = -1.0;
        box.xl(j) = support_point(set, dir, &x0)(j);
    }
    return box;
}

double box_scale(const BoxRegion& box) {
    return std::max(1.0, (box.xu - box.xl).lpNorm<Eigen::Infinity>());
}

double set_scale(const ConvexSet& set) { return box_scale(bounding_box(set)); }

DiameterResult diameter(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const size_t m = v.size();
    auto tri_area2 = [&](size_t i, size_t j, size_t k) {
        return cross2(v[j] - v[i], v[k] - v[i]);
    };
    DiameterResult best;
    auto consider = [&](size_t i, size_t j) {
        const double dist = (v[i] - v[j]).norm();
        if (dist > best.value) {
            best.value = dist;
            best.a = v[i];
            best.b = v[j];
        }
    };
    size_t j = 1;
    for (size_t i = 0; i < m; ++i) {
        const size_t ni = (i + 1) % m;
        while (tri_area2(i, ni, (j + 1) % m) > tri_area2(i, ni, j)) j = (j + 1) % m;
        consider(i, j);
        consider(ni, j);
        consider(i, (j + 1) % m);  // parallel-edge antipodal pair
    }
    return best;
}

double area(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    const size_t m = v.size();
    double twice = 0.0;
    for (size_t i = 0; i < m; ++i) twice += cross2(v[i], v[(i + 1) % m]);
    return 0.5 * twice;
}

VectorXd boundary_point(const ConvexSet& set, const VectorXd& x0, const VectorXd& dir) {
    const VectorXd d = dir.normalized();
    const double tol = 0.0;
    if (!contains(set, x0, 1e-12)) throw InputError("boundary_point: start not inside the set");
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (contains(set, x0 + hi * d, tol)) {
        hi *= 2.0;
        if (++guard > 80) throw UnboundedError("boundary_point: ray never leaves the set");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (contains(set, x0 + mid * d, tol)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return x0 + lo * d;
}

}  // namespace inbox
