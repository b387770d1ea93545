#pragma once

#include "core/penalty.hpp"
#include "core/placement.hpp"
#include "core/types.hpp"

#include <vector>

namespace cdeim {

/// Tolerances and safeguards for the constrained solve.
struct PenaltyParams {
    double lambda_init = 1e-7;  // first penalty weight tried (pre growth)
    double gamma = 10.0;        // growth factor, > 1
    double delta = 1e-7;        // stopping criterion: total penalty < delta
    double tau = 1e-10;         // Newton step tolerance |a_k - a_{k-1}|
    double tau_lambda = 0.1;    // bisection interval width tolerance
    Index max_newton_iters = 100;
    double lambda_cap = 1e12;  // infeasibility guard on the growth phase

    void validate() const;
};

struct SolveOutcome {
    Vector alpha;
    Vector reconstruction;  // phi * alpha
    double lambda_opt = 0.0;
    double penalty_value = 0.0;
    double obs_residual = 0.0;    // |theta*alpha - y|
    double residual_bound = 0.0;  // (lambda_opt / sigma_min(theta)) * |grad P|
    Index newton_iterations_total = 0;
    Index bisection_steps = 0;
    double bound_violation_max = 0.0;  // max distance of reconstruction outside bounds

    /// Total penalty after each Newton solve of the growth phase, in order;
    /// non-increasing when the solves converge.
    std::vector<double> ladder_penalties;

    /// Midpoint and penalty evaluated at each bisection step, in order;
    /// enough to replay the interval updates.
    struct BisectionStep {
        double lambda_mid;
        double penalty;
    };
    std::vector<BisectionStep> bisection_trace;
};

/// Minimum-norm least-squares coefficients theta^+ y, via the bundle's
/// cached SVD with relative cutoff 1e-12. Rank deficiency is handled by
/// truncation (bundle.theta_rank reports it).
Vector deim_solve(const BasisBundle& bundle, const Vector& y);

/// Penalized cost f = 0.5*|theta*a - y|^2 + lambda * P(a) with its gradient
/// and Hessian theta^T theta + lambda * phi^T D phi. The Hessian accumulates
/// only the basis rows with active penalty curvature, so the cost scales
/// with the number of out-of-bounds entries rather than N.
struct CostEval {
    double f;
    Vector grad;
    Matrix hess;
};
CostEval cost_and_derivatives(const Vector& alpha, double lambda, const BasisBundle& bundle,
                              const Vector& y, const BoundsSpec& bounds,
                              const ScalarPenalty& penalty = cubic_penalty());

/// Pure Newton iteration on f_lambda from alpha_init, stopping when the step
/// norm drops to params.tau. The Hessian solve uses Cholesky; if the
/// factorization reports non-positive pivots a Tikhonov shift
/// mu = 1e-12 * trace(H)/m is added once before giving up.
///
/// Throws no_convergence_error (carrying the last iterate) past the
/// iteration cap and numerical_error if the shifted system still fails.
Vector newton_solve(double lambda, const Vector& alpha_init, const BasisBundle& bundle,
                    const Vector& y, const BoundsSpec& bounds, const PenaltyParams& params,
                    const ScalarPenalty& penalty = cubic_penalty(),
                    Index* iterations = nullptr);

/// Constrained solve: start from the unconstrained minimum-norm solution;
/// if its total penalty already satisfies P < delta, return it with
/// lambda_opt = 0. Otherwise grow lambda geometrically (Newton warm-started
/// from the previous coefficients) until P < delta, bisect the bracketing
/// interval down to tau_lambda, take the upper end as lambda_opt and re-solve
/// there.
///
/// Throws infeasible_error when lambda passes params.lambda_cap with the
/// criterion still unmet.
SolveOutcome cdeim_solve(const BasisBundle& bundle, const Vector& y, const BoundsSpec& bounds,
                         const PenaltyParams& params = {},
                         const ScalarPenalty& penalty = cubic_penalty());

/// Clamp a field to [u_min, u_max]; entries in (0, floor_epsilon) are then
/// set to u_min (pass 0 to disable the floor).
Vector threshold_reconstruction(const Vector& u, const BoundsSpec& bounds, double floor_epsilon);

/// Max distance of any entry outside [u_min, u_max] (0 when within bounds).
double max_bound_violation(const Vector& u, const BoundsSpec& bounds);

}  // namespace cdeim
