#include "inbox/barrier.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cassert>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace inbox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinLineStep = 1e-16;

}  // namespace

double BarrierConstraint::value(const Eigen::VectorXd& x) const {
    double v = a.dot(x) + c;
    if (A.size() != 0) {
        // allocation-free x^T A x; this sits on the line-search hot path
        const Eigen::Index m = A.rows();
        double quad = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            double row = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) row += A(j, k) * x(k);
            quad += x(j) * row;
        }
        v += quad;
    }
    return v;
}

Eigen::VectorXd BarrierConstraint::gradient(const Eigen::VectorXd& x) const {
    if (A.size() == 0) return a;
    return 2.0 * (A * x) + a;
}

bool BarrierProblem::in_domain(const Eigen::VectorXd& x) const {
    for (Eigen::Index k = 0; k < log_w.rows(); ++k) {
        if (log_w.row(k).dot(x) + log_d(k) <= 0.0) return false;
    }
    return true;
}

double BarrierProblem::f0(const Eigen::VectorXd& x) const {
    double v = lin.size() ? lin.dot(x) : 0.0;
    for (Eigen::Index k = 0; k < log_w.rows(); ++k) {
        const double r = log_w.row(k).dot(x) + log_d(k);
        if (r <= 0.0) return -kInf;
        v += std::log(r);
    }
    return v;
}

bool BarrierProblem::strictly_feasible(const Eigen::VectorXd& x, double margin) const {
    if (!in_domain(x)) return false;
    for (const auto& g : constraints) {
        if (g.value(x) >= -margin) return false;
    }
    return true;
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "Converged";
        case Termination::StepBudget: return "StepBudget";
        case Termination::LineSearchStall: return "LineSearchStall";
    }
    return "Unknown";
}

double SolverConfig::resolved_mu(int n_barrier) const {
    if (mu > 1.0) return mu;
    return 1.0 + 1.0 / std::sqrt(std::max(1, n_barrier));
}

void SolverConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("SolverConfig: alpha must be in (0, 0.5)");
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("SolverConfig: beta must be in (0, 1)");
    if (!(eps > 0.0)) throw InputError("SolverConfig: eps must be positive");
    if (!(kappa > 0.0)) throw InputError("SolverConfig: kappa must be positive");
    if (max_newton <= 0) throw InputError("SolverConfig: max_newton must be positive");
}

double gamma_bound(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw InputError("gamma_bound: alpha must be in (0, 0.5)");
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("gamma_bound: beta must be in (0, 1)");
    const double t = 1.0 - 2.0 * alpha;
    return alpha * beta * t * t / (20.0 - 8.0 * alpha);
}

NewtonStep newton_decrement(const Eigen::VectorXd& g, const Eigen::MatrixXd& H) {
    // Jacobi equilibration: scale-free pivots keep the factorization alive at
    // extreme barrier weights.
    const Eigen::Index m = H.rows();
    Eigen::VectorXd d(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double h = H(i, i);
        if (!(h > 0.0)) {
            std::vector<double> it(g.data(), g.data() + g.size());
            throw ConditioningError("newton_decrement: Hessian not positive definite",
                                    std::move(it));
        }
        d(i) = 1.0 / std::sqrt(h);
    }
    const Eigen::MatrixXd scaled = d.asDiagonal() * H * d.asDiagonal();
    Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() != Eigen::Success) {
        std::vector<double> it(g.data(), g.data() + g.size());
        throw ConditioningError("newton_decrement: Hessian not positive definite", std::move(it));
    }
    NewtonStep ns;
    ns.step = d.asDiagonal() * llt.solve(Eigen::VectorXd(-(d.asDiagonal() * g)));
    ns.lambda = std::sqrt(std::max(0.0, -g.dot(ns.step)));
    return ns;
}

namespace {

// F(x) = -tau*f0(x) - sum log(-g_i(x)); +inf when infeasible or out of domain.
double barrier_value(const BarrierProblem& p, double tau, const Eigen::VectorXd& x) {
    double phi = 0.0;
    for (const auto& g : p.constraints) {
        const double gv = g.value(x);
        if (gv >= 0.0) return kInf;
        phi += std::log(-gv);
    }
    const double f0 = p.f0(x);
    if (!std::isfinite(f0)) return kInf;
    return -tau * f0 - phi;
}

struct Derivatives {
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    Eigen::VectorXd scratch;
};

// Gradient and Hessian of F at a strictly feasible x, no heap traffic.
void barrier_derivatives(const BarrierProblem& p, double tau, const Eigen::VectorXd& x,
                         Derivatives& d) {
    const int m = p.dim;
    d.grad.setZero(m);
    d.hess.setZero(m, m);
    d.scratch.resize(m);
    if (p.lin.size()) d.grad -= tau * p.lin;
    for (Eigen::Index k = 0; k < p.log_w.rows(); ++k) {
        const double r = p.log_w.row(k).dot(x) + p.log_d(k);
        d.scratch = p.log_w.row(k).transpose();
        d.grad -= (tau / r) * d.scratch;
        d.hess += (tau / (r * r)) * (d.scratch * d.scratch.transpose());
    }
    for (const auto& g : p.constraints) {
        const double gv = g.value(x);
        d.scratch = g.a;
        if (g.A.size() != 0) d.scratch.noalias() += 2.0 * (g.A * x);
        d.grad += d.scratch / (-gv);
        d.hess += (d.scratch * d.scratch.transpose()) / (gv * gv);
        if (g.A.size() != 0) d.hess += (2.0 / (-gv)) * g.A;
    }
}

}  // namespace

CenterResult center(const BarrierProblem& problem, const Eigen::VectorXd& x0, double tau,
                    const SolverConfig& cfg, int step_budget) {
    const int budget = step_budget < 0 ? cfg.max_newton : step_budget;
    Eigen::VectorXd x = x0;
    double F = barrier_value(problem, tau, x);
    if (!std::isfinite(F)) throw InputError("center: starting point is not strictly feasible");

    Derivatives d;
    int steps = 0;
    double prev_lambda_sq = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    while (true) {
        barrier_derivatives(problem, tau, x, d);
        NewtonStep ns;
        try {
            ns = newton_decrement(d.grad, d.hess);
        } catch (ConditioningError&) {
            std::vector<double> it(x.data(), x.data() + x.size());
            throw ConditioningError("center: Hessian not positive definite at iterate",
                                    std::move(it));
        }
        const double lambda_sq = ns.lambda * ns.lambda;
        if (0.5 * lambda_sq <= cfg.kappa) return {x, steps, Termination::Converged};
        // At extreme tau the computed decrement bottoms out on rounding noise
        // above kappa; a stagnating endgame lambda means the iterate is
        // centered to machine precision.
        if (lambda_sq <= 1e-6) {
            stagnant = lambda_sq >= 0.99 * prev_lambda_sq ? stagnant + 1 : 0;
            if (stagnant >= 8) return {x, steps, Termination::Converged};
        }
        prev_lambda_sq = lambda_sq;
        if (steps >= budget) return {x, steps, Termination::StepBudget};

        // Rounding allowance: decreases below evaluation noise of F are
        // accepted rather than chased.
        const double f_noise = 8.0 * DBL_EPSILON * (1.0 + std::abs(F));
        double s = 1.0;
        Eigen::VectorXd cand;
        double Fc;
        while (true) {
            cand = x + s * ns.step;
            Fc = barrier_value(problem, tau, cand);
            if (Fc <= F - cfg.alpha * s * lambda_sq + f_noise) break;
            s *= cfg.beta;
            if (s < kMinLineStep) return {x, steps, Termination::LineSearchStall};
        }
        if ((cand - x).lpNorm<Eigen::Infinity>() == 0.0) {
            return {x, steps, Termination::Converged};  // no representable progress left
        }
        x.swap(cand);
        F = Fc;
        ++steps;
        if (x.lpNorm<Eigen::Infinity>() > cfg.diverge_norm) {
            throw UnboundedError("center: iterate diverged (set not compact in this direction)");
        }
        if (cfg.trace) cfg.trace({tau, lambda_sq, F, steps});
    }
}

SolverReport path_follow(const BarrierProblem& problem, const Eigen::VectorXd& x_init,
                         const SolverConfig& cfg) {
    cfg.validate();
    if (x_init.size() != problem.dim) throw InputError("path_follow: x_init dimension mismatch");
    for (size_t i = 0; i < problem.constraints.size(); ++i) {
        if (problem.constraints[i].value(x_init) >= 0.0) {
            throw InputError("path_follow: initial point violates constraint " +
                             std::to_string(i));
        }
    }
    if (!problem.in_domain(x_init)) {
        throw InputError("path_follow: initial point outside the objective domain");
    }

    const int n = problem.n_barrier();
    const double mu = cfg.resolved_mu(n);
    double tau = cfg.tau0;
    if (tau <= 0.0) tau = n / std::max(1.0, std::abs(problem.f0(x_init)));
    // Overshooting the stopping target squares the terminal conditioning for
    // no benefit; the last tau is capped just past n/eps.
    const double tau_cap = n > 0 ? (n / cfg.eps) * (1.0 + 1e-6) : tau;

    SolverReport rep;
    rep.x_star = x_init;
    rep.gap = std::numeric_limits<double>::infinity();
    int total = 0;
    while (true) {
        CenterResult cr;
        try {
            cr = center(problem, rep.x_star, tau, cfg, cfg.max_newton - total);
        } catch (const ConditioningError&) {
            // The terminal tau of a pinched instance can exceed what double
            // precision factorizes. With at least one completed centering the
            // certified iterate is returned with a stall warning; a failure
            // before any certificate is a genuine problem defect.
            if (rep.outer_iters == 0) throw;
            rep.termination = Termination::LineSearchStall;
            break;
        }
        total += cr.steps;
        ++rep.outer_iters;
        rep.x_star = cr.x;
        rep.newton_steps = total;
        if (cr.status != Termination::Converged) {
            rep.termination = cr.status;  // gap keeps its last certified value
            break;
        }
        rep.gap = n / tau;
        if (rep.gap < cfg.eps || n == 0) {
            rep.termination = Termination::Converged;
            break;
        }
        tau = std::min(tau * mu, tau_cap);
    }
    rep.f0_star = problem.f0(rep.x_star);
    assert(rep.termination != Termination::Converged || rep.gap <= cfg.eps);
    return rep;
}

}  // namespace inbox
