/*
 * cdeim - bounded-field reconstruction from sparse sensors.
 *
 * C API of the shared library. All functions return a cdeim_status; outputs
 * come back through pointers. Objects behind opaque handles are immutable
 * once created except where noted, so they may be shared across threads.
 * Error details for the calling thread are available from
 * cdeim_last_error().
 */
#ifndef CDEIM_CDEIM_H
#define CDEIM_CDEIM_H

#include <stdint.h>

#if defined(_WIN32)
#define CDEIM_API __declspec(dllexport)
#else
#define CDEIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdeim_status {
    CDEIM_OK = 0,
    CDEIM_ERR_INVALID_ARGUMENT = 1, /* bad dimensions, values, or preconditions */
    CDEIM_ERR_IO = 2,               /* file missing, malformed, or unwritable */
    CDEIM_ERR_NUMERICAL = 3,        /* factorization or iteration breakdown */
    CDEIM_ERR_INFEASIBLE = 4,       /* penalty parameter cap reached */
    CDEIM_ERR_NO_CONVERGENCE = 5,   /* Newton iteration cap reached */
    CDEIM_ERR_INTERNAL = 6
} cdeim_status;

/* Library version string, e.g. "0.1.0". */
CDEIM_API const char* cdeim_version(void);

/* Stable lowercase name of a status code, e.g. "io". */
CDEIM_API const char* cdeim_status_name(cdeim_status status);

/* Message of the most recent failure on the calling thread ("" if none). */
CDEIM_API const char* cdeim_last_error(void);

/* ---------------------------------------------------------------- matrices */

/* Dense real matrix, column-major. */
typedef struct cdeim_matrix cdeim_matrix;

/* data may be NULL for a zero matrix, otherwise rows*cols column-major
 * doubles are copied. */
CDEIM_API cdeim_status cdeim_matrix_create(int64_t rows, int64_t cols, const double* data,
                                           cdeim_matrix** out);
CDEIM_API void cdeim_matrix_destroy(cdeim_matrix* m);
CDEIM_API int64_t cdeim_matrix_rows(const cdeim_matrix* m);
CDEIM_API int64_t cdeim_matrix_cols(const cdeim_matrix* m);
CDEIM_API const double* cdeim_matrix_data(const cdeim_matrix* m);
CDEIM_API double* cdeim_matrix_data_mut(cdeim_matrix* m);

/* Binary container (14-byte header: magic "CDMX", version u16, rows u32,
 * cols u32, little-endian; then column-major f64 payload) or plain CSV when
 * the path ends in ".csv". Round trips are bit-exact in the binary form. */
CDEIM_API cdeim_status cdeim_matrix_read(const char* path, cdeim_matrix** out);
CDEIM_API cdeim_status cdeim_matrix_write(const cdeim_matrix* m, const char* path);

/* ------------------------------------------------- basis and sensor layout */

/* Leading m left singular vectors of the snapshot matrix, orthonormal
 * columns, descending singular values, sign-fixed per column. */
CDEIM_API cdeim_status cdeim_pod_basis(const cdeim_matrix* snapshots, int64_t m,
                                       cdeim_matrix** phi_out);

/* First r pivots of column-pivoted QR of phi^T; indices_out holds r values. */
CDEIM_API cdeim_status cdeim_cpqr_select(const cdeim_matrix* phi, int64_t r,
                                         int64_t* indices_out);

/* CPQR with rows at inaccessible grid points zeroed; accessible has one
 * 0/1 flag per grid point. rank_warning_out (optional) is set nonzero when
 * the masked basis ran out of rank before r pivots. */
CDEIM_API cdeim_status cdeim_restricted_cpqr_select(const cdeim_matrix* phi,
                                                    const uint8_t* accessible, int64_t r,
                                                    int64_t* indices_out,
                                                    int* rank_warning_out);

/* Basis + sensor rows with the sampled-basis SVD cached. */
typedef struct cdeim_bundle cdeim_bundle;

CDEIM_API cdeim_status cdeim_bundle_create(const cdeim_matrix* phi, const int64_t* sensor_indices,
                                           int64_t r, cdeim_bundle** out);
CDEIM_API void cdeim_bundle_destroy(cdeim_bundle* bundle);
CDEIM_API int64_t cdeim_bundle_num_sensors(const cdeim_bundle* bundle);
CDEIM_API int64_t cdeim_bundle_num_modes(const cdeim_bundle* bundle);
CDEIM_API int64_t cdeim_bundle_grid_size(const cdeim_bundle* bundle);
/* Smallest nonzero singular value of the sampled basis. */
CDEIM_API double cdeim_bundle_sigma_min(const cdeim_bundle* bundle);
/* Nonzero when the sampled basis has full numerical rank. */
CDEIM_API int cdeim_bundle_full_rank(const cdeim_bundle* bundle);

/* ----------------------------------------------------------------- solvers */

typedef struct cdeim_solver_params {
    double lambda_init; /* first penalty weight tried (default 1e-7) */
    double gamma;       /* growth factor > 1 (default 10) */
    double delta;       /* stop when total penalty < delta (default 1e-7) */
    double tau;         /* Newton step tolerance (default 1e-10) */
    double tau_lambda;  /* bisection interval tolerance (default 0.1) */
    double lambda_cap;  /* infeasibility guard (default 1e12) */
    int64_t max_newton_iters; /* default 100 */
} cdeim_solver_params;

CDEIM_API void cdeim_solver_params_init(cdeim_solver_params* params);

typedef struct cdeim_solve_stats {
    double lambda_opt;
    double penalty_value;
    double obs_residual;        /* |theta*alpha - y| */
    double residual_bound;      /* (lambda_opt/sigma_min)*|grad P| */
    double bound_violation_max; /* worst distance outside [u_min, u_max] */
    int64_t newton_iterations;
    int64_t bisection_steps;
} cdeim_solve_stats;

/* Unconstrained minimum-norm solve alpha = theta^+ y; alpha_out holds m
 * values. */
CDEIM_API cdeim_status cdeim_deim_solve(const cdeim_bundle* bundle, const double* y, int64_t r,
                                        double* alpha_out);

/* Constrained solve with the piecewise cubic range penalty. y holds r
 * observations; alpha_out (m values) is required, reconstruction_out
 * (grid_size values) and stats_out are optional. */
CDEIM_API cdeim_status cdeim_constrained_solve(const cdeim_bundle* bundle, const double* y,
                                               int64_t r, double u_min, double u_max,
                                               const cdeim_solver_params* params,
                                               double* alpha_out, double* reconstruction_out,
                                               cdeim_solve_stats* stats_out);

/* In-place clamp to [u_min, u_max]; entries in (0, floor_epsilon) are then
 * set to u_min (floor_epsilon = 0 disables). */
CDEIM_API cdeim_status cdeim_threshold(double* u, int64_t n, double u_min, double u_max,
                                       double floor_epsilon);

/* ----------------------------------------------------------------- metrics */

CDEIM_API cdeim_status cdeim_relative_l2(const double* u_true, const double* u_rec, int64_t n,
                                         double* out);
CDEIM_API cdeim_status cdeim_ensemble_stats(const double* values, int64_t n, double* mean_out,
                                            double* ci95_out);

/* Aggregate a per-case records CSV into a (r, method) summary CSV. */
CDEIM_API cdeim_status cdeim_aggregate_records(const char* records_csv, const char* summary_csv);

/* ----------------------------------------------------- benchmark: harmonics */

typedef struct cdeim_harmonics_config {
    int64_t n_functions; /* default 1000 */
    int64_t n_train;     /* default 800 */
    int64_t grid_points; /* default 1000 */
    int64_t n_terms;     /* default 20 */
    double eta;          /* accessible margin, default 0.1*pi */
    uint64_t seed;
    /* 0: amplitude ~ N(0, 1/k) with 1/k the variance (default);
     * 1: 1/k read as the standard deviation. */
    int amplitude_inv_k_is_stddev;
} cdeim_harmonics_config;

CDEIM_API void cdeim_harmonics_config_init(cdeim_harmonics_config* config);

/* Generate the ensemble and run the restricted-sensor experiment for each of
 * the n_r sensor counts; writes train/test matrices, records.csv and
 * summary.csv under out_dir. threads = 0 uses all cores. */
CDEIM_API cdeim_status cdeim_run_harmonics(const cdeim_harmonics_config* config,
                                           const int64_t* sensor_counts, int64_t n_r,
                                           const cdeim_solver_params* params,
                                           const char* out_dir, int64_t threads);

/* Generate only: train and test matrices written under out_dir. */
CDEIM_API cdeim_status cdeim_generate_harmonics(const cdeim_harmonics_config* config,
                                                const char* out_dir);

/* ------------------------------------------------------ benchmark: wildfire */

typedef struct cdeim_fire_config {
    double domain_x;     /* default 2000 m */
    double domain_y;     /* default 1500 m */
    double cell_length;  /* default 10 m */
    double ignition_x;   /* default 380 m */
    double ignition_y;   /* default 490 m */
    double base_wind;    /* default 2.5 m/s */
    double perturbation; /* default 0.1 */
    double frequency;    /* default 5 */
    double sim_time;     /* seconds per leg, default 3600 */
    uint64_t seed;
    int64_t n_sims;  /* default 250 */
    int64_t n_train; /* default 200 */
} cdeim_fire_config;

CDEIM_API void cdeim_fire_config_init(cdeim_fire_config* config);

/* Simulate the ensemble; writes train.cdmx, test_1h.cdmx, test_2h.cdmx,
 * test_status.cdmx, meta.csv and manifest.txt under out_dir. */
CDEIM_API cdeim_status cdeim_run_fire_sim(const cdeim_fire_config* config, const char* out_dir,
                                          int64_t threads);

#define CDEIM_FIRE_SCENARIO_LINES 0
#define CDEIM_FIRE_SCENARIO_RANDOM 1

/* Reconstruction experiment over a simulated ensemble directory; writes
 * records.csv, summary.csv and per-r reconstruction matrices under out_dir. */
CDEIM_API cdeim_status cdeim_run_fire_recon(const char* sim_dir, int scenario,
                                            const int64_t* sensor_counts, int64_t n_r,
                                            const cdeim_solver_params* params,
                                            const char* out_dir, int64_t threads);

/* Two-hour forecasts from stored reconstructions at sensor count r; writes
 * forecast_records.csv and forecast_summary.csv under out_dir. */
CDEIM_API cdeim_status cdeim_run_fire_forecast(const char* sim_dir, const char* recon_dir,
                                               int64_t r, const char* out_dir, int64_t threads);

#ifdef __cplusplus
}
#endif

#endif /* CDEIM_CDEIM_H */
