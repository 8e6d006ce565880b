#include "inbox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace inbox {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTieEps = 1e-12;

Eigen::Matrix2d rot2(double phi) {
    Eigen::Matrix2d r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
}

void validate(const GridSpec& grid) {
    if (grid.anchor_steps < 2 || grid.size_steps < 2 || grid.angle_steps < 2) {
        throw InputError("GridSpec: all step counts must be >= 2");
    }
}

struct Frame {
    Eigen::Matrix2d back;  // rotated frame -> original
    Vector2d lo, hi;       // bbox of the set in the rotated frame
};

Frame rotated_frame(const ConvexSet& set, double theta) {
    Frame f;
    f.back = rot2(theta);
    const Eigen::Matrix2d fwd = rot2(-theta);
    if (set.polygon) {
        f.lo = Vector2d(std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
        f.hi = -f.lo;
        for (const auto& v : set.polygon->vertices) {
            const Vector2d w = fwd * v;
            f.lo = f.lo.cwiseMin(w);
            f.hi = f.hi.cwiseMax(w);
        }
        return f;
    }
    const VectorXd inner = interior_point(set);
    for (int axis = 0; axis < 2; ++axis) {
        const Vector2d d_rot = axis == 0 ? Vector2d(1, 0) : Vector2d(0, 1);
        const Vector2d d = f.back * d_rot;
        VectorXd dv(2);
        dv << d.x(), d.y();
        const VectorXd s_hi = support_point(set, dv, &inner);
        dv = -dv;
        const VectorXd s_lo = support_point(set, dv, &inner);
        f.hi(axis) = d.x() * s_hi(0) + d.y() * s_hi(1);
        f.lo(axis) = d.x() * s_lo(0) + d.y() * s_lo(1);
    }
    return f;
}

// Best rectangle over one anchor column; pruning against `best_area` is
// exact because skipped candidates cannot beat a feasible area already seen.
struct CellBest {
    double area = 0.0;
    double ax = 0.0, ay = 0.0, w = 0.0, h = 0.0;
    long index = -1;
};

}  // namespace

OracleRect brute_maair(const ConvexSet& set, double t, const GridSpec& grid, int threads) {
    if (std::abs(t) > 1.0) throw InputError("brute_maair: |t| must be <= 1");
    validate(grid);
    const double theta = std::atan(t);
    const Frame f = rotated_frame(set, theta);
    const int na = grid.anchor_steps;
    const int ns = grid.size_steps;
    const double wx = f.hi.x() - f.lo.x();
    const double wy = f.hi.y() - f.lo.y();

    const long anchors = static_cast<long>(na + 1) * (na + 1);
    auto scan_anchor = [&](long a, double best_seen) {
        const int ia = static_cast<int>(a / (na + 1));
        const int ja = static_cast<int>(a % (na + 1));
        const double ax = f.lo.x() + wx * ia / na;
        const double ay = f.lo.y() + wy * ja / na;
        CellBest cell;
        for (int iw = ns; iw >= 1; --iw) {
            const double w = wx * iw / ns;
            if (ax + w > f.hi.x() + 1e-15 * std::abs(f.hi.x())) continue;
            for (int ih = ns; ih >= 1; --ih) {
                const double h = wy * ih / ns;
                if (ay + h > f.hi.y() + 1e-15 * std::abs(f.hi.y())) continue;
                const double area = w * h;
                // areas descend with ih: everything below the floor is done
                if (area <= std::max(cell.area, best_seen)) break;
                VectorXd c(2);
                bool ok = true;
                for (int k = 0; k < 4 && ok; ++k) {
                    const Vector2d p_rot(ax + (k & 1 ? w : 0.0), ay + (k & 2 ? h : 0.0));
                    const Vector2d p = f.back * p_rot;
                    c << p.x(), p.y();
                    ok = contains(set, c, 0.0);
                }
                if (ok) {
                    cell = {area, ax, ay, w, h, a * ns * ns + (long)(ns - iw) * ns + (ns - ih)};
                }
            }
        }
        return cell;
    };

    // Parallel blocks reproduce the serial floor recursion exactly: a cell
    // clipped by the block-entry floor could never improve the running best.
    CellBest best;
    if (threads > 1) {
        const long block = std::max<long>(16L * threads, 64L);
        std::vector<CellBest> cells(block);
        for (long start = 0; start < anchors; start += block) {
            const long end = std::min(anchors, start + block);
            const double floor_area = best.area;
#ifdef INBOX_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
            for (long a = start; a < end; ++a) {
                cells[a - start] = scan_anchor(a, floor_area + kTieEps);
            }
            for (long a = start; a < end; ++a) {
                if (cells[a - start].area > best.area + kTieEps) best = cells[a - start];
            }
        }
    } else {
        for (long a = 0; a < anchors; ++a) {
            const CellBest cell = scan_anchor(a, best.area + kTieEps);
            if (cell.area > best.area + kTieEps) best = cell;
        }
    }

    OracleRect out;
    out.area = best.area;
    if (best.index >= 0) {
        out.rect.x = f.back * Vector2d(best.ax, best.ay);
        out.rect.u = best.w * Vector2d(std::cos(theta), std::sin(theta));
        out.rect.v = best.h * Vector2d(-std::sin(theta), std::cos(theta));
    }
    return out;
}

OracleRect brute_mair(const ConvexSet& set, const GridSpec& grid, int threads) {
    validate(grid);
    OracleRect best;
    for (int a = 0; a <= grid.angle_steps; ++a) {
        const double theta = -kPi / 4.0 + (kPi / 2.0) * a / grid.angle_steps;
        const OracleRect cand = brute_maair(set, std::tan(theta), grid, threads);
        if (cand.area > best.area + kTieEps) best = cand;
    }
    return best;
}

AreaEstimate monte_carlo_area(const ConvexSet& set, long samples, std::uint64_t seed) {
    if (samples < 100) throw InputError("monte_carlo_area: need at least 100 samples");
    if (set.dim != 2) throw InputError("monte_carlo_area: set must be 2-D");
    const BoxRegion bbox = bounding_box(set);
    const double bw = bbox.xu(0) - bbox.xl(0);
    const double bh = bbox.xu(1) - bbox.xl(1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(bbox.xl(0), bbox.xu(0));
    std::uniform_real_distribution<double> uy(bbox.xl(1), bbox.xu(1));
    long hits = 0;
    VectorXd p(2);
    for (long i = 0; i < samples; ++i) {
        p << ux(rng), uy(rng);
        if (contains(set, p, 0.0)) ++hits;
    }
    const double frac = static_cast<double>(hits) / samples;
    AreaEstimate est;
    est.estimate = bw * bh * frac;
    est.stderr_ = bw * bh * std::sqrt(frac * (1.0 - frac) / samples);
    return est;
}

}  // namespace inbox
