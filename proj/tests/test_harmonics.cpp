#include "core/errors.hpp"
#include "core/harmonics.hpp"
#include "core/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cdeim;

namespace {

HarmonicsConfig tiny_config() {
    HarmonicsConfig config;
    config.n_functions = 40;
    config.n_train = 30;
    config.grid_points = 200;
    config.seed = 12;
    return config;
}

}  // namespace

TEST_CASE("rng: substreams are deterministic and distinct") {
    CounterRng a(1, 0);
    CounterRng b(1, 0);
    CounterRng c(1, 1);
    bool all_equal = true;
    for (int k = 0; k < 100; ++k) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        all_equal = all_equal && (va == c.next_u64());
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("rng: box-muller normals have unit scale") {
    CounterRng rng(99, 0);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = rng.normal();
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("harmonics: every column is normalized to peak one") {
    const HarmonicsData data = generate_harmonics(tiny_config());
    const auto check_matrix = [](const Matrix& m) {
        for (Index j = 0; j < m.cols(); ++j) {
            CHECK(m.col(j).cwiseAbs().maxCoeff() == 1.0);
            CHECK((m.col(j).array().abs() <= 1.0).all());
        }
    };
    check_matrix(data.train);
    check_matrix(data.test);
}

TEST_CASE("harmonics: identical seeds regenerate identical matrices") {
    const HarmonicsData a = generate_harmonics(tiny_config());
    const HarmonicsData b = generate_harmonics(tiny_config());
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
}

TEST_CASE("harmonics: columns match an independent replay of the generation contract") {
    const HarmonicsConfig config = tiny_config();
    const HarmonicsData data = generate_harmonics(config);
    const Index n = config.grid_points;
    for (Index j : {Index(0), Index(7), Index(33)}) {
        CounterRng rng(config.seed, static_cast<std::uint64_t>(j));
        Vector g = Vector::Zero(n);
        for (Index k = 1; k <= config.n_terms; ++k) {
            const double amplitude = rng.normal() / std::sqrt(static_cast<double>(k));
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            for (Index i = 0; i < n; ++i) {
                const double x = static_cast<double>(i) * 2.0 * std::numbers::pi /
                                 static_cast<double>(n - 1);
                g(i) += amplitude * std::cos(static_cast<double>(k) * x + phase);
            }
        }
        g /= g.cwiseAbs().maxCoeff();
        const Vector column =
            j < config.n_train ? data.train.col(j) : data.test.col(j - config.n_train);
        CHECK((column - g).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("harmonics: amplitude convention switch rescales the terms") {
    HarmonicsConfig variance_config = tiny_config();
    HarmonicsConfig stddev_config = tiny_config();
    stddev_config.amplitude_inv_k_is_stddev = true;
    const HarmonicsData a = generate_harmonics(variance_config);
    const HarmonicsData b = generate_harmonics(stddev_config);
    CHECK(a.train != b.train);

    // Replay with the 1/k standard deviation and compare against the switch.
    const Index j = 3;
    const Index n = stddev_config.grid_points;
    CounterRng rng(stddev_config.seed, static_cast<std::uint64_t>(j));
    Vector g = Vector::Zero(n);
    for (Index k = 1; k <= stddev_config.n_terms; ++k) {
        const double amplitude = rng.normal() / static_cast<double>(k);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        for (Index i = 0; i < n; ++i) {
            const double x =
                static_cast<double>(i) * 2.0 * std::numbers::pi / static_cast<double>(n - 1);
            g(i) += amplitude * std::cos(static_cast<double>(k) * x + phase);
        }
    }
    g /= g.cwiseAbs().maxCoeff();
    CHECK((b.train.col(j) - g).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("harmonics: access mask covers exactly the interior band") {
    const HarmonicsConfig config = tiny_config();
    const AccessMask mask = harmonics_access_mask(config);
    const Vector x = harmonics_grid(config);
    Index n_accessible = 0;
    for (Index i = 0; i < x.size(); ++i) {
        const bool inside =
            x(i) >= config.eta && x(i) <= 2.0 * std::numbers::pi - config.eta;
        CHECK((mask[static_cast<size_t>(i)] == 1) == inside);
        n_accessible += mask[static_cast<size_t>(i)];
    }
    CHECK(n_accessible > 0);
    CHECK(n_accessible < x.size());
}

TEST_CASE("harmonics: experiment produces well-formed deterministic records") {
    const HarmonicsConfig config = tiny_config();
    PenaltyParams params;
    const std::vector<Index> counts = {3, 5};
    const HarmonicsResult result = run_harmonics_experiment(config, counts, params, 2);

    // One deim and one cdeim record per test case per sensor count.
    CHECK(result.records.size() == static_cast<size_t>(2 * 10 * 2));
    CHECK(result.summary.size() == 4);
    CHECK(result.relaxed_bound_violations == 0);
    CHECK(result.max_bound_violation <= std::cbrt(6.0 * params.delta));
    for (const auto& row : result.summary) {
        CHECK(row.n_cases + row.n_infeasible == 10);
        CHECK(std::isfinite(row.mean_error));
        CHECK(row.error_ci95 < row.mean_error);  // band narrower than the level
    }

    const HarmonicsResult again = run_harmonics_experiment(config, counts, params, 1);
    REQUIRE(again.records.size() == result.records.size());
    for (size_t k = 0; k < result.records.size(); ++k) {
        CHECK(result.records[k].rel_l2 == again.records[k].rel_l2);
        CHECK(result.records[k].lambda_opt == again.records[k].lambda_opt);
        CHECK(result.records[k].method == again.records[k].method);
    }
}

TEST_CASE("harmonics: invalid configurations rejected") {
    HarmonicsConfig config = tiny_config();
    config.n_train = config.n_functions;
    CHECK_THROWS_AS(config.validate(), validation_error);
    config = tiny_config();
    config.eta = 4.0;
    CHECK_THROWS_AS(config.validate(), validation_error);
}
