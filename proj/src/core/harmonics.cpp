#include "core/harmonics.hpp"

#include "core/errors.hpp"
#include "core/matrix_io.hpp"
#include "core/metrics.hpp"
#include "core/parallel.hpp"
#include "core/placement.hpp"
#include "core/pod.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

namespace cdeim {

void HarmonicsConfig::validate() const {
    if (n_functions < 2 || n_train < 1 || n_train >= n_functions) {
        throw validation_error("HarmonicsConfig: need 1 <= n_train < n_functions");
    }
    if (grid_points < 2) {
        throw validation_error("HarmonicsConfig: grid_points must be >= 2");
    }
    if (n_terms < 1) {
        throw validation_error("HarmonicsConfig: n_terms must be >= 1");
    }
    if (!(eta >= 0.0) || !(eta < std::numbers::pi)) {
        throw validation_error("HarmonicsConfig: eta must lie in [0, pi)");
    }
}

namespace {

Vector equispaced_grid(Index n) {
    Vector x(n);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
    for (Index i = 0; i < n; ++i) {
        x(i) = static_cast<double>(i) * step;
    }
    return x;
}

}  // namespace

Vector harmonics_grid(const HarmonicsConfig& config) {
    config.validate();
    return equispaced_grid(config.grid_points);
}

AccessMask harmonics_access_mask(const HarmonicsConfig& config) {
    const Vector x = harmonics_grid(config);
    AccessMask mask(static_cast<size_t>(x.size()), 0);
    const double lo = config.eta;
    const double hi = 2.0 * std::numbers::pi - config.eta;
    for (Index i = 0; i < x.size(); ++i) {
        mask[static_cast<size_t>(i)] = (x(i) >= lo && x(i) <= hi) ? 1 : 0;
    }
    return mask;
}

HarmonicsData generate_harmonics(const HarmonicsConfig& config) {
    config.validate();
    const Vector x = equispaced_grid(config.grid_points);
    Matrix all(config.grid_points, config.n_functions);

    parallel_for(config.n_functions, 0, [&](Index j) {
        CounterRng rng(config.seed, static_cast<std::uint64_t>(j));
        Vector g = Vector::Zero(config.grid_points);
        // Scalar std::cos loop: the draw order and transform are part of the
        // reproducibility contract, so no vectorized math here.
        for (Index k = 1; k <= config.n_terms; ++k) {
            const double kd = static_cast<double>(k);
            const double scale =
                config.amplitude_inv_k_is_stddev ? 1.0 / kd : 1.0 / std::sqrt(kd);
            const double amplitude = scale * rng.normal();
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            for (Index i = 0; i < config.grid_points; ++i) {
                g(i) += amplitude * std::cos(kd * x(i) + phase);
            }
        }
        const double peak = g.cwiseAbs().maxCoeff();
        all.col(j) = g / peak;
    });

    HarmonicsData data;
    data.train = all.leftCols(config.n_train);
    data.test = all.rightCols(config.n_functions - config.n_train);
    return data;
}

HarmonicsResult run_harmonics_experiment(const HarmonicsConfig& config,
                                         const std::vector<Index>& sensor_counts,
                                         const PenaltyParams& params, Index threads) {
    config.validate();
    params.validate();
    if (sensor_counts.empty()) {
        throw validation_error("run_harmonics_experiment: no sensor counts given");
    }

    const HarmonicsData data = generate_harmonics(config);
    const AccessMask mask = harmonics_access_mask(config);
    const BoundsSpec bounds{-1.0, 1.0};
    const double relaxed = std::cbrt(6.0 * params.delta);

    Index r_max = 0;
    for (Index r : sensor_counts) {
        r_max = std::max(r_max, r);
    }
    // One SVD serves every sensor count: the leading r columns of the full
    // basis are exactly the r-mode basis.
    const Matrix pod_full = compute_pod_basis(data.train, r_max);

    HarmonicsResult result;
    const Index n_test = data.test.cols();
    for (Index r : sensor_counts) {
        const Matrix phi = pod_full.leftCols(r);
        bool rank_warning = false;
        const IndexList sensors = restricted_cpqr_select(phi, mask, r, &rank_warning);
        const BasisBundle bundle = assemble_bundle(phi, sensors);

        std::vector<CaseRecord> batch(static_cast<size_t>(2 * n_test));
        std::vector<double> violations(static_cast<size_t>(n_test), 0.0);
        parallel_for(n_test, threads, [&](Index j) {
            const Vector truth = data.test.col(j);
            Vector y(r);
            for (Index k = 0; k < r; ++k) {
                y(k) = truth(sensors[static_cast<size_t>(k)]);
            }
            if (y.norm() == 0.0) {
                for (int t = 0; t < 2; ++t) {
                    CaseRecord rec;
                    rec.case_index = j;
                    rec.r = r;
                    rec.method = t == 0 ? "deim" : "cdeim";
                    rec.feasible = false;
                    rec.error = "zero_observations";
                    batch[static_cast<size_t>(2 * j + t)] = std::move(rec);
                }
                return;
            }

            CaseRecord deim_rec;
            deim_rec.case_index = j;
            deim_rec.r = r;
            deim_rec.method = "deim";
            const Vector alpha_d = deim_solve(bundle, y);
            deim_rec.rel_l2 = relative_l2(truth, bundle.phi * alpha_d);
            deim_rec.rel_obs_residual = relative_obs_residual(bundle.theta, alpha_d, y);
            deim_rec.bound_violation = max_bound_violation(bundle.phi * alpha_d, bounds);
            batch[static_cast<size_t>(2 * j)] = std::move(deim_rec);

            CaseRecord cdeim_rec;
            cdeim_rec.case_index = j;
            cdeim_rec.r = r;
            cdeim_rec.method = "cdeim";
            try {
                const SolveOutcome outcome = cdeim_solve(bundle, y, bounds, params);
                cdeim_rec.rel_l2 = relative_l2(truth, outcome.reconstruction);
                cdeim_rec.rel_obs_residual =
                    relative_obs_residual(bundle.theta, outcome.alpha, y);
                cdeim_rec.lambda_opt = outcome.lambda_opt;
                cdeim_rec.bound_violation = outcome.bound_violation_max;
                violations[static_cast<size_t>(j)] = outcome.bound_violation_max;
            } catch (const infeasible_error&) {
                cdeim_rec.feasible = false;
                cdeim_rec.error = "infeasible";
            } catch (const no_convergence_error&) {
                cdeim_rec.feasible = false;
                cdeim_rec.error = "no_convergence";
            }
            batch[static_cast<size_t>(2 * j + 1)] = std::move(cdeim_rec);
        });

        for (Index j = 0; j < n_test; ++j) {
            result.max_bound_violation =
                std::max(result.max_bound_violation, violations[static_cast<size_t>(j)]);
            if (violations[static_cast<size_t>(j)] > relaxed) {
                ++result.relaxed_bound_violations;
            }
        }
        result.records.insert(result.records.end(), batch.begin(), batch.end());
    }

    result.summary = aggregate_records(result.records);
    return result;
}

HarmonicsResult run_harmonics_to_dir(const HarmonicsConfig& config,
                                     const std::vector<Index>& sensor_counts,
                                     const PenaltyParams& params, const std::string& out_dir,
                                     Index threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const HarmonicsData data = generate_harmonics(config);
    write_matrix(data.train, (fs::path(out_dir) / "train.cdmx").string());
    write_matrix(data.test, (fs::path(out_dir) / "test.cdmx").string());

    HarmonicsResult result = run_harmonics_experiment(config, sensor_counts, params, threads);
    write_case_records_csv(result.records, (fs::path(out_dir) / "records.csv").string());
    write_summary_csv(result.summary, (fs::path(out_dir) / "summary.csv").string());
    return result;
}

}  // namespace cdeim
