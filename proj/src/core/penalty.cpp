#include "core/penalty.hpp"

#include "core/errors.hpp"

#include <cmath>

namespace cdeim {

PenaltyDerivatives CubicPenalty::evaluate(double u, const BoundsSpec& bounds) const {
    if (u < bounds.u_min) {
        const double c = u - bounds.u_min;  // negative
        return {-(c * c * c) / 6.0, -0.5 * c * c, -c};
    }
    if (u > bounds.u_max) {
        const double c = u - bounds.u_max;
        return {(c * c * c) / 6.0, 0.5 * c * c, c};
    }
    return {0.0, 0.0, 0.0};
}

const CubicPenalty& cubic_penalty() {
    static const CubicPenalty instance;
    return instance;
}

PenaltyDerivatives p_cubic(double u, const BoundsSpec& bounds) {
    if (!std::isfinite(u)) {
        throw validation_error("p_cubic: non-finite argument");
    }
    if (!(bounds.u_min < bounds.u_max) || !std::isfinite(bounds.u_min) ||
        !std::isfinite(bounds.u_max)) {
        throw validation_error("p_cubic: bounds must be finite with u_min < u_max");
    }
    return cubic_penalty().evaluate(u, bounds);
}

PenaltyEval total_penalty_of_field(const Vector& u, const Matrix& phi, const BoundsSpec& bounds,
                                   const ScalarPenalty& penalty) {
    if (u.size() != phi.rows()) {
        throw validation_error("total_penalty: reconstruction length does not match basis rows");
    }

    PenaltyEval eval;
    eval.value = 0.0;
    eval.hess_diag = Vector::Zero(u.size());
    Vector d1 = Vector::Zero(u.size());
    bool any_violation = false;
    for (Index i = 0; i < u.size(); ++i) {
        if (bounds.contains(u(i))) {
            continue;  // zero branch; skip the virtual call on the hot path
        }
        const PenaltyDerivatives p = penalty.evaluate(u(i), bounds);
        eval.value += p.value;
        d1(i) = p.d1;
        eval.hess_diag(i) = p.d2;
        any_violation = true;
    }
    if (any_violation) {
        eval.gradient = phi.transpose() * d1;
    } else {
        eval.gradient = Vector::Zero(phi.cols());
    }
    return eval;
}

PenaltyEval total_penalty(const Vector& alpha, const Matrix& phi, const BoundsSpec& bounds,
                          const ScalarPenalty& penalty) {
    if (alpha.size() != phi.cols()) {
        throw validation_error("total_penalty: alpha length does not match basis columns");
    }
    return total_penalty_of_field(phi * alpha, phi, bounds, penalty);
}

}  // namespace cdeim
