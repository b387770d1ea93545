#pragma once

#include "core/types.hpp"

namespace cdeim {

/// Value and first two derivatives of a scalar penalty at one point.
struct PenaltyDerivatives {
    double value;
    double d1;
    double d2;
};

/// Scalar range penalty: zero on [u_min, u_max], positive, convex and C^2
/// outside, with p'' > 0 off the bounds and Lipschitz p''. Any function with
/// these properties may back the solver; the piecewise cubic below is the
/// one shipped.
class ScalarPenalty {
public:
    virtual ~ScalarPenalty() = default;
    virtual PenaltyDerivatives evaluate(double u, const BoundsSpec& bounds) const = 0;
};

/// Piecewise cubic penalty:
///   -(1/6)(u - u_min)^3 below the range, 0 inside, (1/6)(u - u_max)^3 above.
/// Values exactly at the knots take the zero branch (all branches agree
/// there). p'' has Lipschitz constant 1.
class CubicPenalty final : public ScalarPenalty {
public:
    PenaltyDerivatives evaluate(double u, const BoundsSpec& bounds) const override;
};

/// The shared default instance.
const CubicPenalty& cubic_penalty();

/// Convenience wrapper: cubic penalty value and derivatives at u.
PenaltyDerivatives p_cubic(double u, const BoundsSpec& bounds);

/// Total penalty of a coefficient vector: P(alpha) = sum_i p(u_i) with
/// u = phi * alpha.
struct PenaltyEval {
    double value;      // P(alpha) >= 0; zero iff the reconstruction is in bounds
    Vector gradient;   // phi^T p'(u), length m
    Vector hess_diag;  // p''(u_i), length N; positive exactly off the bounds
};

PenaltyEval total_penalty(const Vector& alpha, const Matrix& phi, const BoundsSpec& bounds,
                          const ScalarPenalty& penalty = cubic_penalty());

/// Same evaluation when the reconstruction u = phi * alpha is already at
/// hand; avoids the matrix-vector product in hot loops.
PenaltyEval total_penalty_of_field(const Vector& u, const Matrix& phi, const BoundsSpec& bounds,
                                   const ScalarPenalty& penalty = cubic_penalty());

}  // namespace cdeim
