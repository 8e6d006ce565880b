#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "inbox/geomcheck.hpp"
#include "inbox/json_io.hpp"
#include "inbox/mair2d.hpp"
#include "inbox/mvair.hpp"
#include "inbox/oracle.hpp"
#include "inbox/svg.hpp"

namespace {

using namespace inbox;

// Exit codes: 0 success, 1 verdict violation, 2 input error, 3 solver failure.
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct CommonOpts {
    double eps = 1e-8;
    double tau0 = 1.0;
    std::string mu = "10";
    std::string svg_path;
    int threads = 1;
    long seed = 0;
    bool verbose = false;
};

SolverConfig solver_config(const CommonOpts& o) {
    SolverConfig cfg;
    cfg.tau0 = o.tau0;
    cfg.mu = o.mu == "auto" ? 0.0 : std::stod(o.mu);
    if (o.verbose) {
        cfg.trace = [](const TraceRecord& r) {
            std::fprintf(stderr, "trace tau=%.6g lambda2=%.6g F=%.12g steps=%d\n", r.tau,
                         r.lambda_sq, r.f_value, r.newton_steps);
        };
    }
    return cfg;
}

ordered_json report_json(const SolverReport& rep) {
    ordered_json j;
    j["f0_star"] = round12(rep.f0_star);
    j["gap"] = round12(rep.gap);
    j["outer_iters"] = rep.outer_iters;
    j["newton_steps"] = rep.newton_steps;
    j["termination"] = to_string(rep.termination);
    return j;
}

// The command echo carries only result-relevant flags; execution-only flags
// (--threads, --verbose) live under timings so reruns stay byte-identical.
ordered_json run_result(const ConvexSet& set, const std::string& command, ordered_json result,
                        ordered_json report, double elapsed_ms, int threads) {
    ordered_json j;
    j["input_digest"] = set_digest(set);
    j["command"] = command;
    j["result"] = std::move(result);
    if (!report.is_null()) j["report"] = std::move(report);
    ordered_json t;
    t["elapsed_ms"] = elapsed_ms;
    t["threads"] = threads;
    j["timings"] = std::move(t);
    return j;
}

class Stopwatch {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_flag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

int cmd_mvair(const std::string& input, const CommonOpts& o) {
    Stopwatch sw;
    const ConvexSet set = parse_set_file(input);
    SolverConfig cfg = solver_config(o);
    cfg.eps = o.eps;
    const MvairResult res = solve_mvair(set, cfg);

    ordered_json result;
    result["box"] = to_json(res.box);
    result["volume"] = round12(res.box.volume());
    if (const auto area = exact_area(set)) {
        result["ratio"] = round12(res.box.volume() / *area);
    }
    const std::string command = "mvair " + input + " --eps " + fmt_flag(o.eps) + " --tau0 " +
                                fmt_flag(o.tau0) + " --mu " + o.mu;
    std::cout << run_result(set, command, result, report_json(res.report), sw.ms(), o.threads)
                     .dump(2)
              << "\n";
    if (!o.svg_path.empty()) {
        if (set.dim != 2) throw InputError("--svg requires a 2-D set");
        write_file(o.svg_path, render_figure(set, res.box));
    }
    return kExitOk;
}

int cmd_mair(const std::string& input, const CommonOpts& o, double sweep_eps, int profile_k,
             double direction, bool has_direction) {
    Stopwatch sw;
    const ConvexSet set = parse_set_file(input);
    const SolverConfig cfg = solver_config(o);

    ordered_json result;
    ordered_json report;
    std::string command;
    Rectangle2D rect;
    if (has_direction) {
        const DirectionSample s = maair_direction(set, direction, cfg);
        rect = s.rect;
        result["rect"] = to_json(s.rect);
        result["area"] = round12(s.area);
        result["theta"] = round12(s.theta);
        result["t"] = round12(s.t);
        command = "maair " + input + " --direction " + fmt_flag(direction);
    } else {
        const SweepResult s = mair_sweep(set, sweep_eps, cfg, o.threads);
        rect = s.best;
        const DirectionSample& win = s.samples[s.winner_index];
        result["rect"] = to_json(s.best);
        result["area"] = round12(win.area);
        result["theta"] = round12(win.theta);
        result["t"] = round12(win.t);
        result["directions"] = s.directions;
        result["rho_bar"] = round12(s.rho_bar);
        if (const auto area = exact_area(set)) result["ratio"] = round12(win.area / *area);
        report = report_json(s.winner_report);
        report["total_newton_steps"] = s.total_newton_steps;
        command = "mair " + input + " --eps " + fmt_flag(sweep_eps);
    }
    if (profile_k > 0) {
        const auto prof = f_profile(set, profile_k, cfg, o.threads);
        auto& tbl = result["profile"] = ordered_json::array();
        for (const auto& s : prof) tbl.push_back({round12(s.t), round12(s.area)});
        command += " --profile " + std::to_string(profile_k);
        if (!o.svg_path.empty()) write_file(o.svg_path, render_profile(prof));
    } else if (!o.svg_path.empty()) {
        write_file(o.svg_path, render_figure(set, rect));
    }
    std::cout << run_result(set, command, result, report, sw.ms(), o.threads).dump(2) << "\n";
    return kExitOk;
}

int cmd_profile(const std::string& input, const CommonOpts& o, int samples) {
    Stopwatch sw;
    const ConvexSet set = parse_set_file(input);
    const auto prof = f_profile(set, samples, solver_config(o), o.threads);
    ordered_json result;
    result["samples"] = samples;
    auto& tbl = result["profile"] = ordered_json::array();
    for (const auto& s : prof) tbl.push_back({round12(s.t), round12(s.area)});
    const std::string command = "profile " + input + " --samples " + std::to_string(samples);
    std::cout << run_result(set, command, result, {}, sw.ms(), o.threads).dump(2) << "\n";
    if (!o.svg_path.empty()) write_file(o.svg_path, render_profile(prof));
    return kExitOk;
}

int cmd_check(const std::string& input, const std::string& rect_path, const CommonOpts& o,
              const std::vector<double>& axis, const std::vector<double>& center) {
    Stopwatch sw;
    const ConvexSet set = parse_set_file(input);
    const Rectangle2D rect = parse_rectangle_file(rect_path);
    const double tol = 1e-3 * set_scale(set);

    bool violation = false;
    ordered_json result;
    if (set.polygon) {
        const OptimalityVerdict v = check_polygon_optimality(*set.polygon, rect, tol);
        ordered_json oj;
        oj["case"] = to_string(v.verdict);
        auto& cs = oj["corners"] = ordered_json::array();
        for (const auto& c : v.corners) {
            cs.push_back({{"kind", to_string(c.kind)},
                          {"witness", c.witness},
                          {"residual", round12(c.residual)}});
        }
        if (!v.notes.empty()) oj["notes"] = v.notes;
        result["optimality"] = oj;
        violation = violation || v.verdict == OptimalityCase::Violation;
    }
    if (center.size() == 2) {
        const auto v = check_central_symmetry(Vector2d(center[0], center[1]), rect, tol);
        result["central"] = {{"pass", v.pass}, {"offset", round12(v.offset)}};
        violation = violation || !v.pass;
    }
    if (axis.size() == 4) {
        const AxisLine line{Vector2d(axis[0], axis[1]), Vector2d(axis[2], axis[3])};
        auto& aj = result["axial"] = ordered_json::array();
        for (const auto& v : check_axial_symmetry(line, set, rect, tol)) {
            aj.push_back({{"condition", v.condition},
                          {"applicable", v.applicable},
                          {"pass", v.pass},
                          {"residual", round12(v.residual)},
                          {"note", v.note}});
            violation = violation || (v.applicable && !v.pass);
        }
    }
    result["violation"] = violation;
    std::string command = "check " + input + " --rect " + rect_path;
    std::cout << run_result(set, command, result, {}, sw.ms(), o.threads).dump(2) << "\n";
    if (!o.svg_path.empty() && set.dim == 2) write_file(o.svg_path, render_figure(set, rect));
    return violation ? kExitViolation : kExitOk;
}

int cmd_oracle(const std::string& input, const CommonOpts& o, const std::string& mode,
               double direction, const GridSpec& grid, long mc_samples) {
    Stopwatch sw;
    const ConvexSet set = parse_set_file(input);
    ordered_json result;
    std::string command = "oracle " + input + " --mode " + mode;
    if (mode == "maair" || mode == "mair") {
        const OracleRect r = mode == "maair" ? brute_maair(set, direction, grid, o.threads)
                                             : brute_mair(set, grid, o.threads);
        result["area"] = round12(r.area);
        result["rect"] = to_json(r.rect);
        command += " --anchor-steps " + std::to_string(grid.anchor_steps) + " --size-steps " +
                   std::to_string(grid.size_steps);
        if (mode == "maair") {
            command += " --direction " + fmt_flag(direction);
        } else {
            command += " --angle-steps " + std::to_string(grid.angle_steps);
        }
    } else if (mode == "area") {
        const AreaEstimate est = monte_carlo_area(set, mc_samples, (std::uint64_t)o.seed);
        result["estimate"] = round12(est.estimate);
        result["stderr"] = round12(est.stderr_);
        command += " --samples " + std::to_string(mc_samples) + " --seed " +
                   std::to_string(o.seed);
    } else {
        throw InputError("oracle: --mode must be maair, mair, or area");
    }
    std::cout << run_result(set, command, result, {}, sw.ms(), o.threads).dump(2) << "\n";
    return kExitOk;
}

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--tau0", o.tau0, "initial barrier parameter");
    app->add_option("--mu", o.mu, "barrier increment factor or 'auto'");
    app->add_option("--svg", o.svg_path, "write an SVG figure to this path");
    app->add_option("--threads", o.threads, "parallel workers (default 1)");
    app->add_option("--seed", o.seed, "seed for randomized oracles");
    app->add_flag("--verbose", o.verbose, "per-step solver trace on stderr");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inbox: maximum-volume inscribed boxes and rectangles in convex sets"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string input, rect_path;
    double sweep_eps = 0.01;
    double direction = 0.0;
    int profile_k = 0;
    int samples = 101;
    long mc_samples = 1000000;
    std::string mode = "mair";
    std::vector<double> axis, center;
    GridSpec grid;

    auto* mvair = app.add_subcommand("mvair", "maximum-volume axis-aligned inscribed box");
    mvair->add_option("input", input, "set description (JSON)")->required();
    mvair->add_option("--eps", o.eps, "duality-gap target");
    add_common(mvair, o);

    auto* mair = app.add_subcommand("mair", "maximum-area inscribed rectangle (direction sweep)");
    mair->add_option("input", input, "set description (JSON)")->required();
    mair->add_option("--eps", sweep_eps, "sweep approximation tolerance");
    auto* mair_dir = mair->add_option("--direction", direction, "solve one direction t instead");
    mair->add_option("--profile", profile_k, "emit a K-sample f(t) table");
    add_common(mair, o);

    auto* maair = app.add_subcommand("maair", "maximum-area rectangle in one given direction");
    maair->add_option("input", input, "set description (JSON)")->required();
    maair->add_option("--direction", direction, "t = tan(theta), |t| <= 1")->required();
    maair->add_option("--eps", o.eps, "duality-gap target");
    maair->add_option("--profile", profile_k, "emit a K-sample f(t) table");
    add_common(maair, o);

    auto* profile = app.add_subcommand("profile", "f(t) profile over [-1, 1]");
    profile->add_option("input", input, "set description (JSON)")->required();
    profile->add_option("--samples", samples, "sample count (endpoints included)");
    profile->add_option("--eps", o.eps, "duality-gap target");
    add_common(profile, o);

    auto* check = app.add_subcommand("check", "structural optimality validators");
    check->add_option("input", input, "set description (JSON)")->required();
    check->add_option("--rect", rect_path, "rectangle JSON {x,u,v}")->required();
    check->add_option("--axis", axis, "axis as px py dx dy")->expected(4);
    check->add_option("--center", center, "symmetry center as cx cy")->expected(2);
    add_common(check, o);

    auto* oracle = app.add_subcommand("oracle", "brute-force baselines");
    oracle->add_option("input", input, "set description (JSON)")->required();
    oracle->add_option("--mode", mode, "maair | mair | area");
    oracle->add_option("--direction", direction, "t for maair mode");
    oracle->add_option("--anchor-steps", grid.anchor_steps, "anchor grid steps");
    oracle->add_option("--size-steps", grid.size_steps, "size grid steps");
    oracle->add_option("--angle-steps", grid.angle_steps, "angle grid steps");
    oracle->add_option("--samples", mc_samples, "monte-carlo samples");
    add_common(oracle, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mvair->parsed()) return cmd_mvair(input, o);
        if (mair->parsed()) {
            return cmd_mair(input, o, sweep_eps, profile_k, direction, !mair_dir->empty());
        }
        if (maair->parsed()) return cmd_mair(input, o, sweep_eps, profile_k, direction, true);
        if (profile->parsed()) return cmd_profile(input, o, samples);
        if (check->parsed()) return cmd_check(input, rect_path, o, axis, center);
        if (oracle->parsed()) {
            return cmd_oracle(input, o, mode, direction, grid, mc_samples);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
