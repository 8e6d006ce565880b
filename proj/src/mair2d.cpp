#include "inbox/mair2d.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace inbox {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTieEps = 1e-12;

Eigen::Matrix2d rot(double phi) {
    Eigen::Matrix2d r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
}

// Corner k of the rectangle as a linear map of z = (u1, v2, x1, x2).
Eigen::Matrix<double, 2, 4> corner_map(int k, double t) {
    Eigen::Matrix<double, 2, 4> m = Eigen::Matrix<double, 2, 4>::Zero();
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    if (k == 1 || k == 3) {  // + u
        m(0, 0) += 1.0;
        m(1, 0) += t;
    }
    if (k == 2 || k == 3) {  // + v
        m(0, 1) += -t;
        m(1, 1) += 1.0;
    }
    return m;
}

Rectangle2D rect_from_z(const VectorXd& z, double t) {
    Rectangle2D r;
    r.x = Vector2d(z(2), z(3));
    r.u = z(0) * Vector2d(1.0, t);
    r.v = z(1) * Vector2d(-t, 1.0);
    return r;
}

// Geometry shared by all directions of one sweep.
struct SweepContext {
    Vector2d inner;
    BoxRegion bbox;
    double scale = 1.0;
};

SweepContext make_context(const ConvexSet& set) {
    SweepContext ctx;
    const VectorXd x0 = interior_point(set);
    ctx.inner = Vector2d(x0(0), x0(1));
    ctx.bbox = bounding_box(set);
    ctx.scale = box_scale(ctx.bbox);
    return ctx;
}

bool strict_qt_start(const BarrierProblem& p, const VectorXd& z, double scale) {
    if (!(z(0) > 0.0 && z(1) > 0.0)) return false;
    return p.strictly_feasible(z, 1e-10 * scale);
}

// z for the axis-aligned box [c - dw, c + dw] of the frame rotated by -theta.
VectorXd z_from_rotated_box(const Vector2d& c_rot, const Vector2d& half, double delta,
                            double theta) {
    const Eigen::Matrix2d back = rot(theta);
    const Vector2d lo = c_rot - delta * half;
    const double ct = std::cos(theta);
    VectorXd z(4);
    z(0) = 2.0 * delta * half.x() * ct;
    z(1) = 2.0 * delta * half.y() * ct;
    const Vector2d anchor = back * lo;
    z(2) = anchor.x();
    z(3) = anchor.y();
    return z;
}

// Opening family in the rotated frame: delta-halving, deepen, average, then
// the 0.5 shrink toward the center.
bool open_rotated_box(const BarrierProblem& p, const Vector2d& c_rot, const Vector2d& half,
                      double theta, double scale, VectorXd& out) {
    auto candidate = [&](double delta) { return z_from_rotated_box(c_rot, half, delta, theta); };
    double delta1 = 0.25;
    bool found = false;
    for (int it = 0; it < 60; ++it) {
        if (strict_qt_start(p, candidate(delta1), scale)) {
            found = true;
            break;
        }
        delta1 *= 0.5;
    }
    if (!found) return false;
    double lo = delta1;
    if (strict_qt_start(p, candidate(1.0), scale)) {
        lo = 1.0;
    } else {
        double hi = 1.0;
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (strict_qt_start(p, candidate(mid), scale)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    for (double delta : {0.25 * lo, 0.5 * lo, delta1}) {  // averaged midpoint, then halved
        if (strict_qt_start(p, candidate(delta), scale)) {
            out = candidate(delta);
            return true;
        }
    }
    return false;
}

VectorXd qt_initial(const ConvexSet& set, const BarrierProblem& p, double t,
                    const SweepContext& ctx) {
    const double theta = std::atan(t);
    const Eigen::Matrix2d fwd = rot(-theta);
    // Rotated-frame bounding box from polygon vertices when available.
    if (set.polygon) {
        Vector2d lo(std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
        Vector2d hi = -lo;
        for (const auto& v : set.polygon->vertices) {
            const Vector2d w = fwd * v;
            lo = lo.cwiseMin(w);
            hi = hi.cwiseMax(w);
        }
        VectorXd z;
        if (open_rotated_box(p, 0.5 * (lo + hi), 0.5 * (hi - lo), theta, ctx.scale, z)) {
            return z;
        }
    }
    // Fallback: opening family centered at the set's interior point.
    const Vector2d c_rot = fwd * ctx.inner;
    const Vector2d half(0.5 * ctx.scale, 0.5 * ctx.scale);
    VectorXd z;
    if (open_rotated_box(p, c_rot, half, theta, ctx.scale, z)) return z;
    throw InfeasibleError("maair_direction: no strictly feasible rectangle found "
                          "(empty interior?)");
}

DirectionSample solve_direction(const ConvexSet& set, double t, const SolverConfig& cfg,
                                const SweepContext& ctx, SolverReport* report_out) {
    const BarrierProblem p = build_qt(set, t);
    const VectorXd z0 = qt_initial(set, p, t, ctx);
    const SolverReport rep = path_follow(p, z0, cfg);

    DirectionSample s;
    s.t = t;
    s.theta = std::atan(t);
    s.rect = rect_from_z(rep.x_star, t);
    s.area = s.rect.area();
#ifndef NDEBUG
    const double factored = (1.0 + t * t) * std::exp(rep.f0_star);
    assert(std::abs(s.area - factored) <= 1e-9 * std::max(1.0, s.area));
#endif
    if (report_out) *report_out = rep;
    return s;
}

}  // namespace

ConvexSet rotate_set(const ConvexSet& set, double phi) {
    if (set.dim != 2) throw InputError("rotate_set: set must be 2-D");
    const Eigen::Matrix2d r = rot(phi);
    std::vector<Inequality> ineqs;
    ineqs.reserve(set.ineqs.size());
    for (const auto& iq : set.ineqs) {
        if (const auto* lin = std::get_if<LinearIneq>(&iq)) {
            LinearIneq out;
            out.p = r * Vector2d(lin->p(0), lin->p(1));
            out.b = lin->b;
            ineqs.emplace_back(std::move(out));
        } else {
            const auto& q = std::get<QuadraticIneq>(iq);
            QuadraticIneq out;
            out.A = r * q.A * r.transpose();
            out.b = r * q.b;
            out.c = q.c;
            ineqs.emplace_back(std::move(out));
        }
    }
    ConvexSet rotated = make_convex_set(2, std::move(ineqs));
    if (set.polygon) {
        std::vector<Vector2d> verts;
        verts.reserve(set.polygon->vertices.size());
        for (const auto& v : set.polygon->vertices) verts.push_back(r * v);
        rotated.polygon = make_polygon(std::move(verts));
    }
    return rotated;
}

BarrierProblem build_qt(const ConvexSet& set, double t) {
    if (set.dim != 2) throw InputError("build_qt: set must be 2-D");
    if (std::abs(t) > 1.0) throw InputError("build_qt: |t| must be <= 1");
    BarrierProblem p;
    p.dim = 4;
    p.log_w = MatrixXd::Zero(2, 4);
    p.log_w(0, 0) = 1.0;  // u1 > 0
    p.log_w(1, 1) = 1.0;  // v2 > 0
    p.log_d = VectorXd::Zero(2);
    p.lin = VectorXd::Zero(4);
    p.constraints.reserve(4 * set.ineqs.size());
    for (const auto& iq : set.ineqs) {
        for (int k = 0; k < 4; ++k) {
            const Eigen::Matrix<double, 2, 4> m = corner_map(k, t);
            BarrierConstraint g;
            if (const auto* lin = std::get_if<LinearIneq>(&iq)) {
                g.a = m.transpose() * Vector2d(lin->p(0), lin->p(1));
                g.c = -lin->b;
            } else {
                const auto& q = std::get<QuadraticIneq>(iq);
                g.A = m.transpose() * q.A * m;
                g.a = m.transpose() * (2.0 * q.b);
                g.c = q.c;
            }
            p.constraints.push_back(std::move(g));
        }
    }
    return p;
}

DirectionSample maair_direction(const ConvexSet& set, double t, const SolverConfig& cfg) {
    return solve_direction(set, t, cfg, make_context(set), nullptr);
}

double aspect_ratio_bound(const Polygon2D& poly) {
    const double d = diameter(poly).value;
    const double bound = 4.0 * d * d / area(poly);
    if (bound > 1e6) {
        throw CapabilityError("aspect_ratio_bound: bound exceeds 1e6; refusing the sweep");
    }
    return std::max(1.0, bound);
}

double aspect_ratio_bound(const ConvexSet& set) {
    if (set.dim != 2) throw InputError("aspect_ratio_bound: set must be 2-D");
    if (set.polygon) return aspect_ratio_bound(*set.polygon);
    const BoxRegion bbox = bounding_box(set);
    const VectorXd inner = interior_point(set);
    const double wx = bbox.xu(0) - bbox.xl(0);
    const double wy = bbox.xu(1) - bbox.xl(1);
    // Touching points on the shorter bbox sides (the ends of the long axis).
    VectorXd dir = VectorXd::Zero(2);
    dir(wx >= wy ? 0 : 1) = 1.0;
    const VectorXd q = support_point(set, dir, &inner);
    const VectorXd pt = support_point(set, VectorXd(-dir), &inner);
    Vector2d e(q(0) - pt(0), q(1) - pt(1));
    if (e.norm() < 1e-12 * box_scale(bbox)) e = Vector2d(1.0, 0.0);
    e.normalize();
    const Vector2d n(-e.y(), e.x());
    auto extent = [&](const Vector2d& v) {
        VectorXd d2(2);
        d2 << v.x(), v.y();
        const VectorXd s_hi = support_point(set, d2, &inner);
        d2 = -d2;
        const VectorXd s_lo = support_point(set, d2, &inner);
        return v.x() * (s_hi(0) - s_lo(0)) + v.y() * (s_hi(1) - s_lo(1));
    };
    const double w = extent(e);
    const double h = extent(n);
    const double ar = std::max(w, h) / std::max(1e-300, std::min(w, h));
    const double bound = 16.0 * std::sqrt(2.0) * ar;
    if (bound > 1e6) {
        throw CapabilityError("aspect_ratio_bound: bound exceeds 1e6; refusing the sweep");
    }
    return std::max(1.0, bound);
}

SweepResult mair_sweep(const ConvexSet& set, double eps, const SolverConfig& cfg, int threads) {
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("mair_sweep: eps must be in (0, 1)");
    SweepResult res;
    res.rho_bar = aspect_ratio_bound(set);
    const double alpha = eps / (2.0 * res.rho_bar);
    const int K = static_cast<int>(std::ceil((kPi / 2.0) / alpha));
    res.directions = K;
    res.samples.resize(K);

    const SweepContext ctx = make_context(set);
    std::vector<SolverReport> reports(K);
    auto run_one = [&](int k) {
        const double theta = -kPi / 4.0 + (k + 0.5) * (kPi / 2.0) / K;
        res.samples[k] = solve_direction(set, std::tan(theta), cfg, ctx, &reports[k]);
    };
#ifdef INBOX_HAVE_OPENMP
    if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int k = 0; k < K; ++k) run_one(k);
    } else {
        for (int k = 0; k < K; ++k) run_one(k);
    }
#else
    (void)threads;
    for (int k = 0; k < K; ++k) run_one(k);
#endif

    // Deterministic selection regardless of evaluation order: first sample
    // within 1e-12 of the maximum wins (theta ascends with the index).
    int best = 0;
    for (int k = 1; k < K; ++k) {
        if (res.samples[k].area > res.samples[best].area + kTieEps) best = k;
    }
    res.winner_index = best;
    res.best = res.samples[best].rect;
    res.winner_report = reports[best];
    for (const auto& r : reports) {
        res.total_newton_steps += r.newton_steps;
        res.all_converged = res.all_converged && r.termination == Termination::Converged;
        res.max_gap = std::max(res.max_gap, r.gap);
    }
    return res;
}

std::vector<DirectionSample> f_profile(const ConvexSet& set, int samples,
                                       const SolverConfig& cfg, int threads) {
    if (samples < 2) throw InputError("f_profile: need at least 2 samples");
    const SweepContext ctx = make_context(set);
    std::vector<DirectionSample> out(samples);
    auto run_one = [&](int i) {
        const double t = -1.0 + 2.0 * i / (samples - 1.0);
        out[i] = solve_direction(set, t, cfg, ctx, nullptr);
    };
#ifdef INBOX_HAVE_OPENMP
    if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int i = 0; i < samples; ++i) run_one(i);
    } else {
        for (int i = 0; i < samples; ++i) run_one(i);
    }
#else
    (void)threads;
    for (int i = 0; i < samples; ++i) run_one(i);
#endif
    return out;
}

}  // namespace inbox
