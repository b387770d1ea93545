#include "cdeim/cdeim.h"

#include "core/errors.hpp"
#include "core/harmonics.hpp"
#include "core/matrix_io.hpp"
#include "core/metrics.hpp"
#include "core/penalty.hpp"
#include "core/placement.hpp"
#include "core/pod.hpp"
#include "core/records.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"
#include "core/version.hpp"
#include "core/wildfire.hpp"

#include <cstring>
#include <filesystem>
#include <numbers>
#include <string>

struct cdeim_matrix {
    cdeim::Matrix m;
};

struct cdeim_bundle {
    cdeim::BasisBundle b;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Translate core exceptions into status codes; every API body runs inside.
template <typename F>
cdeim_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return CDEIM_OK;
    } catch (const cdeim::validation_error& e) {
        set_error(e.what());
        return CDEIM_ERR_INVALID_ARGUMENT;
    } catch (const cdeim::io_error& e) {
        set_error(e.what());
        return CDEIM_ERR_IO;
    } catch (const cdeim::infeasible_error& e) {
        set_error(e.what());
        return CDEIM_ERR_INFEASIBLE;
    } catch (const cdeim::no_convergence_error& e) {
        set_error(e.what());
        return CDEIM_ERR_NO_CONVERGENCE;
    } catch (const cdeim::numerical_error& e) {
        set_error(e.what());
        return CDEIM_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return CDEIM_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return CDEIM_ERR_INTERNAL;
    }
}

void require(bool ok, const char* message) {
    if (!ok) {
        throw cdeim::validation_error(message);
    }
}

cdeim::PenaltyParams to_core(const cdeim_solver_params* params) {
    cdeim::PenaltyParams core;
    if (params != nullptr) {
        core.lambda_init = params->lambda_init;
        core.gamma = params->gamma;
        core.delta = params->delta;
        core.tau = params->tau;
        core.tau_lambda = params->tau_lambda;
        core.lambda_cap = params->lambda_cap;
        core.max_newton_iters = params->max_newton_iters;
    }
    return core;
}

std::vector<cdeim::Index> to_index_vector(const int64_t* values, int64_t n, const char* what) {
    require(values != nullptr && n > 0, what);
    return {values, values + n};
}

cdeim::HarmonicsConfig to_core(const cdeim_harmonics_config* config) {
    cdeim::HarmonicsConfig core;
    if (config != nullptr) {
        core.n_functions = config->n_functions;
        core.n_train = config->n_train;
        core.grid_points = config->grid_points;
        core.n_terms = config->n_terms;
        core.eta = config->eta;
        core.seed = config->seed;
        core.amplitude_inv_k_is_stddev = config->amplitude_inv_k_is_stddev != 0;
    }
    return core;
}

cdeim::FireEnsembleConfig to_core(const cdeim_fire_config* config) {
    cdeim::FireEnsembleConfig core;
    if (config != nullptr) {
        core.base.domain_x = config->domain_x;
        core.base.domain_y = config->domain_y;
        core.base.cell_length = config->cell_length;
        core.base.ignition_x = config->ignition_x;
        core.base.ignition_y = config->ignition_y;
        core.base.base_wind = config->base_wind;
        core.base.perturbation = config->perturbation;
        core.base.frequency = config->frequency;
        core.base.sim_time = config->sim_time;
        core.base.seed = config->seed;
        core.n_sims = config->n_sims;
        core.n_train = config->n_train;
    }
    return core;
}

}  // namespace

extern "C" {

const char* cdeim_version(void) { return cdeim::kVersion; }

const char* cdeim_status_name(cdeim_status status) {
    switch (status) {
        case CDEIM_OK:
            return "ok";
        case CDEIM_ERR_INVALID_ARGUMENT:
            return "invalid_argument";
        case CDEIM_ERR_IO:
            return "io";
        case CDEIM_ERR_NUMERICAL:
            return "numerical";
        case CDEIM_ERR_INFEASIBLE:
            return "infeasible";
        case CDEIM_ERR_NO_CONVERGENCE:
            return "no_convergence";
        case CDEIM_ERR_INTERNAL:
            return "internal";
    }
    return "unknown";
}

const char* cdeim_last_error(void) { return g_last_error.c_str(); }

cdeim_status cdeim_matrix_create(int64_t rows, int64_t cols, const double* data,
                                 cdeim_matrix** out) {
    return guarded([&] {
        require(out != nullptr, "cdeim_matrix_create: out is null");
        require(rows > 0 && cols > 0, "cdeim_matrix_create: dimensions must be positive");
        auto* m = new cdeim_matrix;
        if (data != nullptr) {
            m->m = Eigen::Map<const cdeim::Matrix>(data, rows, cols);
        } else {
            m->m = cdeim::Matrix::Zero(rows, cols);
        }
        *out = m;
    });
}

void cdeim_matrix_destroy(cdeim_matrix* m) { delete m; }

int64_t cdeim_matrix_rows(const cdeim_matrix* m) { return m == nullptr ? 0 : m->m.rows(); }

int64_t cdeim_matrix_cols(const cdeim_matrix* m) { return m == nullptr ? 0 : m->m.cols(); }

const double* cdeim_matrix_data(const cdeim_matrix* m) {
    return m == nullptr ? nullptr : m->m.data();
}

double* cdeim_matrix_data_mut(cdeim_matrix* m) { return m == nullptr ? nullptr : m->m.data(); }

cdeim_status cdeim_matrix_read(const char* path, cdeim_matrix** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "cdeim_matrix_read: null argument");
        auto* m = new cdeim_matrix{cdeim::read_matrix(path)};
        *out = m;
    });
}

cdeim_status cdeim_matrix_write(const cdeim_matrix* m, const char* path) {
    return guarded([&] {
        require(m != nullptr && path != nullptr, "cdeim_matrix_write: null argument");
        cdeim::write_matrix(m->m, path);
    });
}

cdeim_status cdeim_pod_basis(const cdeim_matrix* snapshots, int64_t m, cdeim_matrix** phi_out) {
    return guarded([&] {
        require(snapshots != nullptr && phi_out != nullptr, "cdeim_pod_basis: null argument");
        auto* phi = new cdeim_matrix{cdeim::compute_pod_basis(snapshots->m, m)};
        *phi_out = phi;
    });
}

cdeim_status cdeim_cpqr_select(const cdeim_matrix* phi, int64_t r, int64_t* indices_out) {
    return guarded([&] {
        require(phi != nullptr && indices_out != nullptr, "cdeim_cpqr_select: null argument");
        const cdeim::IndexList indices = cdeim::cpqr_select(phi->m, r);
        for (size_t k = 0; k < indices.size(); ++k) {
            indices_out[k] = indices[k];
        }
    });
}

cdeim_status cdeim_restricted_cpqr_select(const cdeim_matrix* phi, const uint8_t* accessible,
                                          int64_t r, int64_t* indices_out,
                                          int* rank_warning_out) {
    return guarded([&] {
        require(phi != nullptr && accessible != nullptr && indices_out != nullptr,
                "cdeim_restricted_cpqr_select: null argument");
        const cdeim::AccessMask mask(accessible,
                                     accessible + static_cast<size_t>(phi->m.rows()));
        bool warning = false;
        const cdeim::IndexList indices =
            cdeim::restricted_cpqr_select(phi->m, mask, r, &warning);
        for (size_t k = 0; k < indices.size(); ++k) {
            indices_out[k] = indices[k];
        }
        if (rank_warning_out != nullptr) {
            *rank_warning_out = warning ? 1 : 0;
        }
    });
}

cdeim_status cdeim_bundle_create(const cdeim_matrix* phi, const int64_t* sensor_indices,
                                 int64_t r, cdeim_bundle** out) {
    return guarded([&] {
        require(phi != nullptr && out != nullptr, "cdeim_bundle_create: null argument");
        const cdeim::IndexList indices =
            to_index_vector(sensor_indices, r, "cdeim_bundle_create: empty sensor list");
        auto* bundle = new cdeim_bundle{cdeim::assemble_bundle(phi->m, indices)};
        *out = bundle;
    });
}

void cdeim_bundle_destroy(cdeim_bundle* bundle) { delete bundle; }

int64_t cdeim_bundle_num_sensors(const cdeim_bundle* bundle) {
    return bundle == nullptr ? 0 : bundle->b.num_sensors();
}

int64_t cdeim_bundle_num_modes(const cdeim_bundle* bundle) {
    return bundle == nullptr ? 0 : bundle->b.num_modes();
}

int64_t cdeim_bundle_grid_size(const cdeim_bundle* bundle) {
    return bundle == nullptr ? 0 : bundle->b.grid_size();
}

double cdeim_bundle_sigma_min(const cdeim_bundle* bundle) {
    return bundle == nullptr ? 0.0 : bundle->b.sigma_min();
}

int cdeim_bundle_full_rank(const cdeim_bundle* bundle) {
    return bundle != nullptr && bundle->b.full_rank() ? 1 : 0;
}

void cdeim_solver_params_init(cdeim_solver_params* params) {
    if (params == nullptr) {
        return;
    }
    const cdeim::PenaltyParams defaults;
    params->lambda_init = defaults.lambda_init;
    params->gamma = defaults.gamma;
    params->delta = defaults.delta;
    params->tau = defaults.tau;
    params->tau_lambda = defaults.tau_lambda;
    params->lambda_cap = defaults.lambda_cap;
    params->max_newton_iters = defaults.max_newton_iters;
}

cdeim_status cdeim_deim_solve(const cdeim_bundle* bundle, const double* y, int64_t r,
                              double* alpha_out) {
    return guarded([&] {
        require(bundle != nullptr && y != nullptr && alpha_out != nullptr,
                "cdeim_deim_solve: null argument");
        require(r == bundle->b.num_sensors(),
                "cdeim_deim_solve: observation length does not match sensors");
        const cdeim::Vector obs = Eigen::Map<const cdeim::Vector>(y, r);
        const cdeim::Vector alpha = cdeim::deim_solve(bundle->b, obs);
        Eigen::Map<cdeim::Vector>(alpha_out, alpha.size()) = alpha;
    });
}

cdeim_status cdeim_constrained_solve(const cdeim_bundle* bundle, const double* y, int64_t r,
                                     double u_min, double u_max,
                                     const cdeim_solver_params* params, double* alpha_out,
                                     double* reconstruction_out, cdeim_solve_stats* stats_out) {
    return guarded([&] {
        require(bundle != nullptr && y != nullptr && alpha_out != nullptr,
                "cdeim_constrained_solve: null argument");
        require(r == bundle->b.num_sensors(),
                "cdeim_constrained_solve: observation length does not match sensors");
        const cdeim::Vector obs = Eigen::Map<const cdeim::Vector>(y, r);
        const cdeim::SolveOutcome outcome =
            cdeim::cdeim_solve(bundle->b, obs, cdeim::BoundsSpec{u_min, u_max}, to_core(params));
        Eigen::Map<cdeim::Vector>(alpha_out, outcome.alpha.size()) = outcome.alpha;
        if (reconstruction_out != nullptr) {
            Eigen::Map<cdeim::Vector>(reconstruction_out, outcome.reconstruction.size()) =
                outcome.reconstruction;
        }
        if (stats_out != nullptr) {
            stats_out->lambda_opt = outcome.lambda_opt;
            stats_out->penalty_value = outcome.penalty_value;
            stats_out->obs_residual = outcome.obs_residual;
            stats_out->residual_bound = outcome.residual_bound;
            stats_out->bound_violation_max = outcome.bound_violation_max;
            stats_out->newton_iterations = outcome.newton_iterations_total;
            stats_out->bisection_steps = outcome.bisection_steps;
        }
    });
}

cdeim_status cdeim_threshold(double* u, int64_t n, double u_min, double u_max,
                             double floor_epsilon) {
    return guarded([&] {
        require(u != nullptr && n > 0, "cdeim_threshold: null or empty field");
        require(u_min < u_max, "cdeim_threshold: u_min must be below u_max");
        const cdeim::Vector out = cdeim::threshold_reconstruction(
            Eigen::Map<const cdeim::Vector>(u, n), cdeim::BoundsSpec{u_min, u_max},
            floor_epsilon);
        Eigen::Map<cdeim::Vector>(u, n) = out;
    });
}

cdeim_status cdeim_relative_l2(const double* u_true, const double* u_rec, int64_t n,
                               double* out) {
    return guarded([&] {
        require(u_true != nullptr && u_rec != nullptr && out != nullptr && n > 0,
                "cdeim_relative_l2: null argument");
        *out = cdeim::relative_l2(Eigen::Map<const cdeim::Vector>(u_true, n),
                                  Eigen::Map<const cdeim::Vector>(u_rec, n));
    });
}

cdeim_status cdeim_ensemble_stats(const double* values, int64_t n, double* mean_out,
                                  double* ci95_out) {
    return guarded([&] {
        require(values != nullptr && mean_out != nullptr && ci95_out != nullptr && n > 0,
                "cdeim_ensemble_stats: null or empty sample");
        const cdeim::EnsembleStats stats =
            cdeim::ensemble_stats(std::vector<double>(values, values + n));
        *mean_out = stats.mean;
        *ci95_out = stats.ci95_halfwidth;
    });
}

cdeim_status cdeim_aggregate_records(const char* records_csv, const char* summary_csv) {
    return guarded([&] {
        require(records_csv != nullptr && summary_csv != nullptr,
                "cdeim_aggregate_records: null path");
        const auto records = cdeim::read_case_records_csv(records_csv);
        cdeim::write_summary_csv(cdeim::aggregate_records(records), summary_csv);
    });
}

void cdeim_harmonics_config_init(cdeim_harmonics_config* config) {
    if (config == nullptr) {
        return;
    }
    const cdeim::HarmonicsConfig defaults;
    config->n_functions = defaults.n_functions;
    config->n_train = defaults.n_train;
    config->grid_points = defaults.grid_points;
    config->n_terms = defaults.n_terms;
    config->eta = defaults.eta;
    config->seed = defaults.seed;
    config->amplitude_inv_k_is_stddev = defaults.amplitude_inv_k_is_stddev ? 1 : 0;
}

cdeim_status cdeim_run_harmonics(const cdeim_harmonics_config* config,
                                 const int64_t* sensor_counts, int64_t n_r,
                                 const cdeim_solver_params* params, const char* out_dir,
                                 int64_t threads) {
    return guarded([&] {
        require(out_dir != nullptr, "cdeim_run_harmonics: null output directory");
        const auto counts =
            to_index_vector(sensor_counts, n_r, "cdeim_run_harmonics: empty sensor counts");
        cdeim::run_harmonics_to_dir(to_core(config), counts, to_core(params), out_dir, threads);
    });
}

cdeim_status cdeim_generate_harmonics(const cdeim_harmonics_config* config,
                                      const char* out_dir) {
    return guarded([&] {
        require(out_dir != nullptr, "cdeim_generate_harmonics: null output directory");
        const cdeim::HarmonicsData data = cdeim::generate_harmonics(to_core(config));
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        cdeim::write_matrix(data.train, (fs::path(out_dir) / "train.cdmx").string());
        cdeim::write_matrix(data.test, (fs::path(out_dir) / "test.cdmx").string());
    });
}

void cdeim_fire_config_init(cdeim_fire_config* config) {
    if (config == nullptr) {
        return;
    }
    const cdeim::FireEnsembleConfig defaults;
    config->domain_x = defaults.base.domain_x;
    config->domain_y = defaults.base.domain_y;
    config->cell_length = defaults.base.cell_length;
    config->ignition_x = defaults.base.ignition_x;
    config->ignition_y = defaults.base.ignition_y;
    config->base_wind = defaults.base.base_wind;
    config->perturbation = defaults.base.perturbation;
    config->frequency = defaults.base.frequency;
    config->sim_time = defaults.base.sim_time;
    config->seed = defaults.base.seed;
    config->n_sims = defaults.n_sims;
    config->n_train = defaults.n_train;
}

cdeim_status cdeim_run_fire_sim(const cdeim_fire_config* config, const char* out_dir,
                                int64_t threads) {
    return guarded([&] {
        require(out_dir != nullptr, "cdeim_run_fire_sim: null output directory");
        cdeim::run_fire_sim_to_dir(to_core(config), out_dir, threads);
    });
}

cdeim_status cdeim_run_fire_recon(const char* sim_dir, int scenario,
                                  const int64_t* sensor_counts, int64_t n_r,
                                  const cdeim_solver_params* params, const char* out_dir,
                                  int64_t threads) {
    return guarded([&] {
        require(sim_dir != nullptr && out_dir != nullptr, "cdeim_run_fire_recon: null path");
        require(scenario == CDEIM_FIRE_SCENARIO_LINES || scenario == CDEIM_FIRE_SCENARIO_RANDOM,
                "cdeim_run_fire_recon: unknown scenario");
        cdeim::FireReconConfig config;
        config.scenario = scenario == CDEIM_FIRE_SCENARIO_LINES
                              ? cdeim::SensorScenario::restricted_lines
                              : cdeim::SensorScenario::random_burning;
        config.sensor_counts =
            to_index_vector(sensor_counts, n_r, "cdeim_run_fire_recon: empty sensor counts");
        config.params = to_core(params);
        config.threads = threads;
        cdeim::run_fire_recon_to_dir(sim_dir, config, out_dir);
    });
}

cdeim_status cdeim_run_fire_forecast(const char* sim_dir, const char* recon_dir, int64_t r,
                                     const char* out_dir, int64_t threads) {
    return guarded([&] {
        require(sim_dir != nullptr && recon_dir != nullptr && out_dir != nullptr,
                "cdeim_run_fire_forecast: null path");
        cdeim::run_fire_forecast_to_dir(sim_dir, recon_dir, r, out_dir, threads);
    });
}

}  // extern "C"
