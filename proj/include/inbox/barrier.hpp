#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "inbox/errors.hpp"

namespace inbox {

// Smooth constraint g(x) = x^T A x + a^T x + c < 0. An empty A (0x0)
// marks a linear constraint.
struct BarrierConstraint {
    Eigen::MatrixXd A;
    Eigen::VectorXd a;
    double c = 0.0;

    bool is_linear() const { return A.size() == 0; }
    double value(const Eigen::VectorXd& x) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
};

// maximize f0(x) = sum_k log(w_k.x + d_k) + lin.x over {x : g_i(x) < 0}.
//
// The log terms' implied domain (w_k.x + d_k > 0) belongs to the objective,
// not to the barrier, so n_barrier() counts only the explicit constraints.
// f0 is concave and every g_i convex; with a bounded feasible region the
// composite -tau*f0 - sum log(-g_i) is strictly convex and self-concordant.
struct BarrierProblem {
    int dim = 0;
    Eigen::MatrixXd log_w;  // K x dim, K may be 0
    Eigen::VectorXd log_d;  // K
    Eigen::VectorXd lin;    // dim, zero when unused
    std::vector<BarrierConstraint> constraints;

    int n_barrier() const { return static_cast<int>(constraints.size()); }
    bool in_domain(const Eigen::VectorXd& x) const;
    // -inf outside the objective domain.
    double f0(const Eigen::VectorXd& x) const;
    bool strictly_feasible(const Eigen::VectorXd& x, double margin = 0.0) const;
};

enum class Termination { Converged, StepBudget, LineSearchStall };

const char* to_string(Termination t);

struct TraceRecord {
    double tau = 0.0;
    double lambda_sq = 0.0;
    double f_value = 0.0;
    int newton_steps = 0;
};

struct SolverConfig {
    double tau0 = 1.0;   // <= 0 selects the n/(initial gap estimate) heuristic
    double mu = 10.0;    // <= 1 selects auto: 1 + 1/sqrt(n_barrier)
    double eps = 1e-8;   // duality-gap target n/tau
    double alpha = 0.2;  // backtracking sufficient decrease, in (0, 0.5)
    double beta = 0.9;   // backtracking shrink, in (0, 1)
    double kappa = 1e-10;        // centering tolerance on lambda^2/2
    int max_newton = 5000;       // total Newton-step budget per solve
    double diverge_norm = 1e9;   // iterate blow-up => UnboundedError
    std::function<void(const TraceRecord&)> trace;

    double resolved_mu(int n_barrier) const;
    void validate() const;
};

struct SolverReport {
    Eigen::VectorXd x_star;
    double f0_star = 0.0;
    double gap = 0.0;  // n_barrier / tau_final
    int outer_iters = 0;
    int newton_steps = 0;
    Termination termination = Termination::Converged;
};

struct NewtonStep {
    double lambda = 0.0;
    Eigen::VectorXd step;
};

// Solves H * step = -g by dense Cholesky; lambda = sqrt(-g.step).
// Non-PD H raises ConditioningError with the gradient attached.
NewtonStep newton_decrement(const Eigen::VectorXd& g, const Eigen::MatrixXd& H);

struct CenterResult {
    Eigen::VectorXd x;
    int steps = 0;
    Termination status = Termination::Converged;
};

// Damped Newton with backtracking on F(x) = -tau*f0(x) - sum log(-g_i(x)).
// Every accepted iterate is strictly feasible; stops at lambda^2/2 <= kappa.
CenterResult center(const BarrierProblem& problem, const Eigen::VectorXd& x0, double tau,
                    const SolverConfig& cfg, int step_budget = -1);

// Alternates centering and tau := mu*tau until n_barrier/tau < eps.
SolverReport path_follow(const BarrierProblem& problem, const Eigen::VectorXd& x_init,
                         const SolverConfig& cfg);

// Lower bound on the per-step decrease in the damped phase,
// alpha*beta*(1-2*alpha)^2 / (20 - 8*alpha). Diagnostics only.
double gamma_bound(double alpha, double beta);

}  // namespace inbox
