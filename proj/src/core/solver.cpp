#include "core/solver.hpp"

#include "core/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <string>

namespace cdeim {

void PenaltyParams::validate() const {
    if (!(gamma > 1.0)) {
        throw validation_error("PenaltyParams: gamma must exceed 1");
    }
    if (!(lambda_init > 0.0) || !(delta > 0.0) || !(tau > 0.0) || !(tau_lambda > 0.0)) {
        throw validation_error("PenaltyParams: lambda_init, delta, tau, tau_lambda must be > 0");
    }
    if (!(lambda_init < lambda_cap)) {
        throw validation_error("PenaltyParams: lambda_init must be below lambda_cap");
    }
    if (max_newton_iters < 1) {
        throw validation_error("PenaltyParams: max_newton_iters must be >= 1");
    }
}

Vector deim_solve(const BasisBundle& bundle, const Vector& y) {
    if (y.size() != bundle.num_sensors()) {
        throw validation_error("deim_solve: observation length " + std::to_string(y.size()) +
                               " does not match sensor count " +
                               std::to_string(bundle.num_sensors()));
    }
    const Index rank = bundle.theta_rank;
    Vector projected = bundle.theta_u.leftCols(rank).transpose() * y;
    projected.array() /= bundle.theta_sigma.head(rank).array();
    return bundle.theta_v.leftCols(rank) * projected;
}

namespace {

struct PenaltyTerms {
    double value = 0.0;
    Vector grad;           // phi^T p'(u)
    IndexList active;      // rows with p'' > 0
    Vector active_curv;    // p''(u_i) over active rows
};

// One pass over the reconstruction collecting everything the Newton step
// needs from the penalty.
PenaltyTerms penalty_terms(const Vector& u, const Matrix& phi, const BoundsSpec& bounds,
                           const ScalarPenalty& penalty) {
    PenaltyTerms terms;
    terms.grad = Vector::Zero(phi.cols());
    std::vector<double> curv;
    for (Index i = 0; i < u.size(); ++i) {
        if (bounds.contains(u(i))) {
            continue;
        }
        const PenaltyDerivatives p = penalty.evaluate(u(i), bounds);
        terms.value += p.value;
        if (p.d1 != 0.0) {
            terms.grad.noalias() += p.d1 * phi.row(i).transpose();
        }
        if (p.d2 > 0.0) {
            terms.active.push_back(i);
            curv.push_back(p.d2);
        }
    }
    if (!curv.empty()) {
        terms.active_curv =
            Eigen::Map<const Vector>(curv.data(), static_cast<Index>(curv.size()));
    }
    return terms;
}

Matrix hessian_from_terms(const PenaltyTerms& terms, double lambda, const BasisBundle& bundle) {
    Matrix hess = bundle.theta_gram;
    const Index k = static_cast<Index>(terms.active.size());
    if (lambda > 0.0 && k > 0) {
        // lambda * phi^T D phi accumulated over the active rows only.
        Matrix scaled(k, bundle.num_modes());
        for (Index t = 0; t < k; ++t) {
            scaled.row(t) = std::sqrt(lambda * terms.active_curv(t)) *
                            bundle.phi.row(terms.active[static_cast<size_t>(t)]);
        }
        hess.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
        hess.triangularView<Eigen::StrictlyUpper>() = hess.transpose();
    }
    return hess;
}

Vector solve_newton_system(const Matrix& hess, const Vector& grad) {
    Eigen::LLT<Matrix> llt(hess);
    if (llt.info() == Eigen::Success) {
        return llt.solve(grad);
    }
    // Non-positive pivot: retry once with a tiny Tikhonov shift.
    const Index m = hess.rows();
    const double mu = 1e-12 * hess.trace() / static_cast<double>(m);
    Matrix shifted = hess;
    shifted.diagonal().array() += mu;
    llt.compute(shifted);
    if (llt.info() != Eigen::Success) {
        throw numerical_error("newton_solve: Hessian singular after regularization");
    }
    return llt.solve(grad);
}

}  // namespace

CostEval cost_and_derivatives(const Vector& alpha, double lambda, const BasisBundle& bundle,
                              const Vector& y, const BoundsSpec& bounds,
                              const ScalarPenalty& penalty) {
    if (alpha.size() != bundle.num_modes()) {
        throw validation_error("cost_and_derivatives: alpha length does not match basis");
    }
    if (y.size() != bundle.num_sensors()) {
        throw validation_error("cost_and_derivatives: observation length does not match sensors");
    }
    if (lambda < 0.0) {
        throw validation_error("cost_and_derivatives: lambda must be nonnegative");
    }

    const Vector u = bundle.phi * alpha;
    const Vector residual = bundle.theta * alpha - y;
    const PenaltyTerms terms = penalty_terms(u, bundle.phi, bounds, penalty);

    CostEval eval;
    eval.f = 0.5 * residual.squaredNorm() + lambda * terms.value;
    eval.grad = bundle.theta.transpose() * residual + lambda * terms.grad;
    eval.hess = hessian_from_terms(terms, lambda, bundle);
    return eval;
}

Vector newton_solve(double lambda, const Vector& alpha_init, const BasisBundle& bundle,
                    const Vector& y, const BoundsSpec& bounds, const PenaltyParams& params,
                    const ScalarPenalty& penalty, Index* iterations) {
    Vector alpha = alpha_init;
    for (Index k = 1; k <= params.max_newton_iters; ++k) {
        const Vector u = bundle.phi * alpha;
        const PenaltyTerms terms = penalty_terms(u, bundle.phi, bounds, penalty);
        const Vector grad = bundle.theta.transpose() * (bundle.theta * alpha - y) +
                            lambda * terms.grad;
        const Matrix hess = hessian_from_terms(terms, lambda, bundle);
        const Vector step = solve_newton_system(hess, grad);
        alpha -= step;
        if (step.norm() <= params.tau) {
            if (iterations != nullptr) {
                *iterations += k;
            }
            return alpha;
        }
    }
    if (iterations != nullptr) {
        *iterations += params.max_newton_iters;
    }
    throw no_convergence_error("newton_solve: no convergence within " +
                                   std::to_string(params.max_newton_iters) + " iterations",
                               alpha);
}

double max_bound_violation(const Vector& u, const BoundsSpec& bounds) {
    double worst = 0.0;
    for (Index i = 0; i < u.size(); ++i) {
        worst = std::max(worst, std::max(bounds.u_min - u(i), u(i) - bounds.u_max));
    }
    return std::max(worst, 0.0);
}

SolveOutcome cdeim_solve(const BasisBundle& bundle, const Vector& y, const BoundsSpec& bounds,
                         const PenaltyParams& params, const ScalarPenalty& penalty) {
    params.validate();
    if (!(bounds.u_min < bounds.u_max)) {
        throw validation_error("cdeim_solve: bounds must satisfy u_min < u_max");
    }

    SolveOutcome out;
    Vector alpha = deim_solve(bundle, y);
    PenaltyEval pen = total_penalty(alpha, bundle.phi, bounds, penalty);
    double lambda_opt = 0.0;

    if (pen.value >= params.delta) {
        // Growth phase: multiply lambda until the stopping criterion holds,
        // warm-starting each Newton solve from the previous coefficients.
        double lambda = params.lambda_init;
        while (true) {
            lambda *= params.gamma;
            if (lambda > params.lambda_cap) {
                throw infeasible_error(
                    "cdeim_solve: penalty parameter exceeded cap " +
                    std::to_string(params.lambda_cap) +
                    " with criterion unmet; constraint set is likely empty for this basis");
            }
            alpha = newton_solve(lambda, alpha, bundle, y, bounds, params, penalty,
                                 &out.newton_iterations_total);
            pen = total_penalty(alpha, bundle.phi, bounds, penalty);
            out.ladder_penalties.push_back(pen.value);
            if (pen.value < params.delta) {
                break;
            }
        }

        // Bisection refinement of the bracketing interval [lambda/gamma, lambda].
        double lambda_lo = lambda / params.gamma;
        double lambda_hi = lambda;
        while (lambda_hi - lambda_lo > params.tau_lambda) {
            const double lambda_mid = 0.5 * (lambda_lo + lambda_hi);
            alpha = newton_solve(lambda_mid, alpha, bundle, y, bounds, params, penalty,
                                 &out.newton_iterations_total);
            pen = total_penalty(alpha, bundle.phi, bounds, penalty);
            out.bisection_trace.push_back({lambda_mid, pen.value});
            if (pen.value >= params.delta) {
                lambda_lo = lambda_mid;
            } else {
                lambda_hi = lambda_mid;
            }
            ++out.bisection_steps;
        }

        lambda_opt = lambda_hi;
        alpha = newton_solve(lambda_opt, alpha, bundle, y, bounds, params, penalty,
                             &out.newton_iterations_total);
        pen = total_penalty(alpha, bundle.phi, bounds, penalty);
    }

    out.alpha = std::move(alpha);
    out.reconstruction = bundle.phi * out.alpha;
    out.lambda_opt = lambda_opt;
    out.penalty_value = pen.value;
    out.obs_residual = (bundle.theta * out.alpha - y).norm();
    out.residual_bound = lambda_opt / bundle.sigma_min() * pen.gradient.norm();
    out.bound_violation_max = max_bound_violation(out.reconstruction, bounds);
    return out;
}

Vector threshold_reconstruction(const Vector& u, const BoundsSpec& bounds, double floor_epsilon) {
    Vector out = u.cwiseMax(bounds.u_min).cwiseMin(bounds.u_max);
    if (floor_epsilon > 0.0) {
        for (Index i = 0; i < out.size(); ++i) {
            if (out(i) > 0.0 && out(i) < floor_epsilon) {
                out(i) = bounds.u_min;
            }
        }
    }
    return out;
}

}  // namespace cdeim
