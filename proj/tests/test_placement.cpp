#include "core/errors.hpp"
#include "core/harmonics.hpp"
#include "core/placement.hpp"
#include "core/pod.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>

using namespace cdeim;

TEST_CASE("cpqr: diagonal matrix pivots by column norm") {
    Matrix phi(2, 2);
    phi << 3.0, 0.0, 0.0, 2.0;  // phi^T = [[3,0],[0,2]]
    CHECK(cpqr_select(phi, 2) == IndexList{0, 1});
}

TEST_CASE("cpqr: picks the largest column first") {
    Matrix phi(2, 2);
    phi << 0.0, 1.0, 5.0, 0.0;  // phi^T columns: (0,1) and (5,0)
    CHECK(cpqr_select(phi, 1) == IndexList{1});
}

TEST_CASE("cpqr: agrees with the greedy projection reference") {
    const Matrix phi = oracles::random_orthonormal(30, 6, 13, 0);
    CHECK(cpqr_select(phi, 6) == oracles::greedy_cpqr(phi, 6));
}

TEST_CASE("cpqr: deterministic across repeated calls") {
    const Matrix phi = oracles::random_orthonormal(64, 8, 17, 3);
    const IndexList first = cpqr_select(phi, 8);
    for (int rep = 0; rep < 3; ++rep) {
        CHECK(cpqr_select(phi, 8) == first);
    }
}

TEST_CASE("cpqr: rejects out-of-range sensor counts") {
    const Matrix phi = oracles::random_orthonormal(10, 4, 19, 0);
    CHECK_THROWS_AS(cpqr_select(phi, 11), validation_error);
    CHECK_THROWS_AS(cpqr_select(phi, 5), validation_error);
    CHECK_THROWS_AS(cpqr_select(phi, 0), validation_error);
}

TEST_CASE("restricted cpqr: all-true mask matches the unrestricted selection") {
    const Matrix phi = oracles::random_orthonormal(25, 5, 23, 1);
    const AccessMask mask(25, 1);
    CHECK(restricted_cpqr_select(phi, mask, 5) == cpqr_select(phi, 5));
}

TEST_CASE("restricted cpqr: masked example stays inside the accessible set") {
    Matrix phi(3, 2);
    phi << 3.0, 0.0, 0.0, 2.0, 1.0, 1.0;  // phi^T = [[3,0,1],[0,2,1]]
    const AccessMask mask = {0, 1, 1};
    const IndexList selected = restricted_cpqr_select(phi, mask, 2);
    CHECK(selected == oracles::greedy_cpqr(phi, 2, &mask));
    for (Index idx : selected) {
        CHECK(mask[static_cast<size_t>(idx)] == 1);
    }
    CHECK(selected == IndexList{1, 2});
}

TEST_CASE("restricted cpqr: output always within the accessible set") {
    for (std::uint64_t stream = 0; stream < 4; ++stream) {
        const Matrix phi = oracles::random_orthonormal(40, 6, 29, stream);
        AccessMask mask(40, 0);
        CounterRng rng(31, stream);
        Index n_accessible = 0;
        for (auto& flag : mask) {
            flag = rng.uniform() < 0.4 ? 1 : 0;
            n_accessible += flag;
        }
        if (n_accessible < 6) {
            continue;
        }
        for (Index idx : restricted_cpqr_select(phi, mask, 6)) {
            CHECK(mask[static_cast<size_t>(idx)] == 1);
        }
    }
}

TEST_CASE("restricted cpqr: harmonics basis sensors stay inside the band") {
    HarmonicsConfig config;
    config.n_functions = 120;
    config.n_train = 100;
    config.seed = 5;
    const HarmonicsData data = generate_harmonics(config);
    const Matrix phi = compute_pod_basis(data.train, 10);
    const AccessMask mask = harmonics_access_mask(config);
    const IndexList sensors = restricted_cpqr_select(phi, mask, 10);
    const Vector x = harmonics_grid(config);
    const double lo = config.eta;
    const double hi = 2.0 * std::numbers::pi - config.eta;
    REQUIRE(sensors.size() == 10);
    for (Index idx : sensors) {
        CHECK(x(idx) >= lo);
        CHECK(x(idx) <= hi);
    }
}

TEST_CASE("restricted cpqr: too few accessible points is rejected") {
    const Matrix phi = oracles::random_orthonormal(10, 4, 37, 0);
    AccessMask mask(10, 0);
    mask[2] = mask[7] = 1;
    CHECK_THROWS_AS(restricted_cpqr_select(phi, mask, 3), validation_error);
}

TEST_CASE("restricted cpqr: rank deficiency raises the warning flag") {
    // Two accessible rows that are scalar multiples: rank 1 < r = 2.
    Matrix phi(4, 2);
    phi << 1.0, 0.0, 2.0, 0.0, 0.0, 1.0, 0.0, 2.0;
    const AccessMask mask = {1, 1, 0, 0};
    bool warning = false;
    const IndexList selected = restricted_cpqr_select(phi, mask, 2, &warning);
    CHECK(warning);
    REQUIRE(selected.size() == 2);
    for (Index idx : selected) {
        CHECK(mask[static_cast<size_t>(idx)] == 1);
    }
}

TEST_CASE("assemble_bundle: copies the sampled rows bit-exactly") {
    const Matrix phi = Matrix::Identity(3, 3);
    const BasisBundle bundle = assemble_bundle(phi, {2, 0});
    Matrix expected(2, 3);
    expected << 0.0, 0.0, 1.0, 1.0, 0.0, 0.0;
    CHECK(bundle.theta == expected);

    const Matrix random_phi = oracles::random_orthonormal(20, 4, 41, 0);
    const BasisBundle rb = assemble_bundle(random_phi, {7, 3, 19, 0});
    for (Index k = 0; k < rb.num_sensors(); ++k) {
        CHECK(rb.theta.row(k) == random_phi.row(rb.sensor_indices[static_cast<size_t>(k)]));
    }
}

TEST_CASE("assemble_bundle: sigma_min matches an SVD of theta") {
    HarmonicsConfig config;
    config.n_functions = 120;
    config.n_train = 100;
    config.seed = 9;
    const HarmonicsData data = generate_harmonics(config);
    const Matrix phi = compute_pod_basis(data.train, 10);
    const IndexList sensors = restricted_cpqr_select(phi, harmonics_access_mask(config), 10);
    const BasisBundle bundle = assemble_bundle(phi, sensors);
    CHECK(bundle.sigma_min() > 0.0);
    Eigen::JacobiSVD<Matrix> svd(bundle.theta);
    CHECK(std::abs(bundle.sigma_min() - svd.singularValues().minCoeff()) < 1e-10);
}

TEST_CASE("assemble_bundle: duplicate or invalid indices are rejected") {
    const Matrix phi = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(assemble_bundle(phi, {0, 0}), validation_error);
    CHECK_THROWS_AS(assemble_bundle(phi, {0, 3}), validation_error);
    CHECK_THROWS_AS(assemble_bundle(phi, {}), validation_error);
}

TEST_CASE("placement: row selection then inversion is identity on basis coefficients") {
    const Matrix phi = oracles::random_orthonormal(30, 6, 43, 2);
    const IndexList sensors = cpqr_select(phi, 6);
    const BasisBundle bundle = assemble_bundle(phi, sensors);
    for (std::uint64_t stream = 0; stream < 5; ++stream) {
        const Vector alpha = oracles::random_matrix(6, 1, 47, stream).col(0);
        const Vector sampled = bundle.theta * alpha;  // C phi alpha
        const Vector recovered = bundle.theta.colPivHouseholderQr().solve(sampled);
        CHECK((phi * recovered - phi * alpha).norm() < 1e-10);
    }
}
