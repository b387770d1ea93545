#include "core/errors.hpp"
#include "core/pod.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cdeim;

TEST_CASE("pod: identity snapshots give an orthonormal pair") {
    const Matrix snapshots = Matrix::Identity(3, 3);
    const Matrix phi = compute_pod_basis(snapshots, 2);
    REQUIRE(phi.rows() == 3);
    REQUIRE(phi.cols() == 2);
    CHECK((phi.transpose() * phi - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("pod: rank-1 snapshot returns the normalized column") {
    Matrix snapshots(3, 1);
    snapshots << 3.0, 0.0, -4.0;
    const Matrix phi = compute_pod_basis(snapshots, 1);
    // Sign convention: the largest-magnitude entry (the -4) ends up positive.
    CHECK(phi(0, 0) == doctest::Approx(-0.6).epsilon(1e-12));
    CHECK(phi(1, 0) == doctest::Approx(0.0));
    CHECK(phi(2, 0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("pod: matches the Gram-eigendecomposition reference") {
    const Matrix snapshots = oracles::random_matrix(50, 20, 7, 0);
    const Index m = 5;
    const Matrix phi = compute_pod_basis(snapshots, m);
    Matrix reference = oracles::pod_via_gram(snapshots, m);
    fix_column_signs(reference);
    for (Index j = 0; j < m; ++j) {
        CHECK((phi.col(j) - reference.col(j)).norm() < 1e-8);
    }
}

TEST_CASE("pod: columns are orthonormal for random inputs") {
    for (std::uint64_t stream = 0; stream < 5; ++stream) {
        const Matrix snapshots = oracles::random_matrix(40, 15, 11, stream);
        const Matrix phi = compute_pod_basis(snapshots, 8);
        CHECK((phi.transpose() * phi - Matrix::Identity(8, 8)).norm() < 1e-10);
    }
}

TEST_CASE("pod: m past the numerical rank is rejected with the rank") {
    Matrix snapshots(4, 3);
    snapshots.setZero();
    snapshots.col(0) << 1.0, 2.0, 3.0, 4.0;
    snapshots.col(1) = 2.0 * snapshots.col(0);
    snapshots.col(2) = -snapshots.col(0);
    CHECK_THROWS_WITH_AS(compute_pod_basis(snapshots, 2),
                         doctest::Contains("numerical rank is 1"), validation_error);
}

TEST_CASE("pod: invalid inputs") {
    Matrix snapshots(2, 2);
    snapshots << 1.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(compute_pod_basis(snapshots, 3), validation_error);
    CHECK_THROWS_AS(compute_pod_basis(snapshots, 0), validation_error);
    snapshots(1, 1) = std::nan("");
    CHECK_THROWS_AS(compute_pod_basis(snapshots, 1), validation_error);
}
