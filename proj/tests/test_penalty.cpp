#include "core/errors.hpp"
#include "core/penalty.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cdeim;

namespace {
const BoundsSpec kUnit{-1.0, 1.0};
}

TEST_CASE("p_cubic: interior point carries no penalty") {
    const auto [value, d1, d2] = p_cubic(0.0, kUnit);
    CHECK(value == 0.0);
    CHECK(d1 == 0.0);
    CHECK(d2 == 0.0);
}

TEST_CASE("p_cubic: unit overshoot above the range") {
    const auto [value, d1, d2] = p_cubic(2.0, kUnit);
    CHECK(value == 1.0 / 6.0);
    CHECK(d1 == 0.5);
    CHECK(d2 == 1.0);
}

TEST_CASE("p_cubic: unit overshoot below the range") {
    const auto [value, d1, d2] = p_cubic(-2.0, kUnit);
    CHECK(value == 1.0 / 6.0);
    CHECK(d1 == -0.5);
    CHECK(d2 == 1.0);
}

TEST_CASE("p_cubic: knots take the zero branch") {
    for (double u : {-1.0, 1.0}) {
        const auto [value, d1, d2] = p_cubic(u, kUnit);
        CHECK(value == 0.0);
        CHECK(d1 == 0.0);
        CHECK(d2 == 0.0);
    }
}

TEST_CASE("p_cubic: C2 continuity rates at the knots") {
    // Approaching from outside, value, d1, d2 vanish at rates h^3, h^2, h.
    for (double h : {1e-2, 1e-4}) {
        const auto above = p_cubic(1.0 + h, kUnit);
        CHECK(above.value == doctest::Approx(h * h * h / 6.0).epsilon(1e-12));
        CHECK(above.d1 == doctest::Approx(h * h / 2.0).epsilon(1e-12));
        CHECK(above.d2 == doctest::Approx(h).epsilon(1e-12));
        const auto below = p_cubic(-1.0 - h, kUnit);
        CHECK(below.value == doctest::Approx(h * h * h / 6.0).epsilon(1e-12));
        CHECK(below.d1 == doctest::Approx(-h * h / 2.0).epsilon(1e-12));
        CHECK(below.d2 == doctest::Approx(h).epsilon(1e-12));
    }
}

TEST_CASE("p_cubic: monotone decrease below, increase above") {
    CounterRng rng(3, 0);
    for (int k = 0; k < 200; ++k) {
        const double u = rng.uniform(-10.0, 10.0);
        const auto [value, d1, d2] = p_cubic(u, kUnit);
        CHECK(value >= 0.0);
        CHECK(d2 >= 0.0);
        if (u < kUnit.u_min) {
            CHECK(d1 <= 0.0);
        } else if (u > kUnit.u_max) {
            CHECK(d1 >= 0.0);
        } else {
            CHECK(d1 == 0.0);
        }
    }
}

TEST_CASE("p_cubic: second derivative is 1-Lipschitz") {
    CounterRng rng(5, 0);
    for (int k = 0; k < 500; ++k) {
        const double x = rng.uniform(-6.0, 6.0);
        const double y = rng.uniform(-6.0, 6.0);
        const double dx = p_cubic(x, kUnit).d2;
        const double dy = p_cubic(y, kUnit).d2;
        CHECK(std::abs(dx - dy) <= std::abs(x - y) + 1e-15);
    }
}

TEST_CASE("p_cubic: non-finite input rejected") {
    CHECK_THROWS_AS(p_cubic(std::nan(""), kUnit), validation_error);
    CHECK_THROWS_AS(p_cubic(0.0, BoundsSpec{1.0, -1.0}), validation_error);
}

TEST_CASE("total_penalty: interior reconstructions carry no penalty or gradient") {
    const Matrix phi = oracles::random_orthonormal(20, 3, 7, 0);
    Vector alpha(3);
    alpha << 0.1, -0.05, 0.2;  // small coefficients keep phi*alpha inside [-1,1]
    const PenaltyEval eval = total_penalty(alpha, phi, kUnit);
    CHECK(eval.value == 0.0);
    CHECK(eval.gradient.norm() == 0.0);
    CHECK(eval.hess_diag.norm() == 0.0);
}

TEST_CASE("total_penalty: two-point example by hand") {
    Matrix phi(2, 1);
    phi << 1.0, 0.0;
    Vector alpha(1);
    alpha << 2.0;
    const PenaltyEval eval = total_penalty(alpha, phi, kUnit);
    CHECK(eval.value == 1.0 / 6.0);
    CHECK(eval.gradient(0) == 0.5);
    CHECK(eval.hess_diag(0) == 1.0);
    CHECK(eval.hess_diag(1) == 0.0);
}

TEST_CASE("total_penalty: gradient matches finite differences") {
    const Matrix phi = oracles::random_orthonormal(30, 4, 11, 0);
    const auto value_of = [&](const Vector& a) { return total_penalty(a, phi, kUnit).value; };
    for (std::uint64_t stream = 0; stream < 10; ++stream) {
        const Vector alpha = 3.0 * oracles::random_matrix(4, 1, 13, stream).col(0);
        const PenaltyEval eval = total_penalty(alpha, phi, kUnit);
        const Vector fd = oracles::fd_gradient(value_of, alpha);
        CHECK((fd - eval.gradient).norm() <= 1e-6 * (1.0 + eval.gradient.norm()));
    }
}

TEST_CASE("total_penalty: hess_diag positive exactly off the bounds") {
    const Matrix phi = oracles::random_orthonormal(25, 4, 17, 0);
    const Vector alpha = 4.0 * oracles::random_matrix(4, 1, 19, 0).col(0);
    const Vector u = phi * alpha;
    const PenaltyEval eval = total_penalty(alpha, phi, kUnit);
    for (Index i = 0; i < u.size(); ++i) {
        if (u(i) < kUnit.u_min || u(i) > kUnit.u_max) {
            CHECK(eval.hess_diag(i) > 0.0);
        } else {
            CHECK(eval.hess_diag(i) == 0.0);
        }
    }
}

TEST_CASE("total_penalty: convex along segments") {
    const Matrix phi = oracles::random_orthonormal(20, 3, 23, 0);
    CounterRng rng(29, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const Vector a1 = 3.0 * oracles::random_matrix(3, 1, 31, 2 * rep).col(0);
        const Vector a2 = 3.0 * oracles::random_matrix(3, 1, 31, 2 * rep + 1).col(0);
        const double t = rng.uniform();
        const double lhs = total_penalty(t * a1 + (1.0 - t) * a2, phi, kUnit).value;
        const double rhs = t * total_penalty(a1, phi, kUnit).value +
                           (1.0 - t) * total_penalty(a2, phi, kUnit).value;
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("total_penalty: zero set is exactly the constraint set") {
    const Matrix phi = oracles::random_orthonormal(20, 3, 37, 0);
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
        const Vector alpha = 2.5 * oracles::random_matrix(3, 1, 41, stream).col(0);
        const Vector u = phi * alpha;
        const bool inside = (u.array() >= kUnit.u_min).all() && (u.array() <= kUnit.u_max).all();
        const double value = total_penalty(alpha, phi, kUnit).value;
        CHECK((value == 0.0) == inside);
    }
}

TEST_CASE("total_penalty: dimension mismatch rejected") {
    const Matrix phi = Matrix::Identity(3, 2);
    CHECK_THROWS_AS(total_penalty(Vector::Zero(3), phi, kUnit), validation_error);
}
