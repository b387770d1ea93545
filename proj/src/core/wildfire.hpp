#pragma once

#include "core/records.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cdeim {

/// Wildfire cellular automaton on a grid of square cells. Cells are indexed
/// row-major: cell (row i, column j) with center (x, y) = ((j+0.5)l, (i+0.5)l)
/// maps to vector slot i*nx + j.
struct FireConfig {
    double domain_x = 2000.0;  // meters
    double domain_y = 1500.0;
    double cell_length = 10.0;
    double ignition_x = 380.0;
    double ignition_y = 490.0;
    double base_wind = 2.5;     // v0, m/s
    double perturbation = 0.1;  // epsilon
    double frequency = 5.0;     // nu
    double sim_time = 3600.0;   // seconds per simulation leg
    std::uint64_t seed = 0;

    void validate() const;
    Index nx() const { return static_cast<Index>(domain_x / cell_length + 0.5); }
    Index ny() const { return static_cast<Index>(domain_y / cell_length + 0.5); }
    Index n_cells() const { return nx() * ny(); }
    Index ignition_cell() const;
};

/// Random inputs of one wind realization: amplitudes are standard normal,
/// phases uniform on [0, 2*pi]. Drawn in the order a, b, phase1, phase2.
struct WindDraws {
    double amp_a;
    double amp_b;
    double phase1;
    double phase2;
};
WindDraws draw_wind(CounterRng& rng);

/// Divergence-free wind sampled at cell centers, derived from the stream
/// function
///   psi = v0*y + eps*[A (Lx/nu) cos(2 pi nu x / Lx + p1)
///                   + B (Ly/nu) sin(2 pi nu y / Ly + p2)]
/// via v = (d psi / dy, -d psi / dx).
struct WindField {
    Index nx = 0;
    Index ny = 0;
    Vector vx;     // per cell, row-major
    Vector vy;
    Vector speed;  // |v|
    Vector angle;  // atan2(vy, vx)
};
WindField build_wind_field(const FireConfig& config, const WindDraws& draws);

/// Stream function value at a point; the finite-difference reference for the
/// analytic wind components.
double stream_function(const FireConfig& config, const WindDraws& draws, double x, double y);

inline constexpr int kNumDirections = 8;  // multiples of pi/4, 0 = +x

/// Per-cell elliptical spread template: R_max from the 10% rule with a
/// 5e-3 m/s diffusion floor, length-to-width ratio rho = 1 + 0.5592|v|,
/// eccentricity E = sqrt(1 - 1/rho^2), and
/// R(theta) = R_max (1 - E) / (1 - E cos(theta - theta_wind)).
struct SpreadRates {
    Index nx = 0;
    Index ny = 0;
    Vector r_max;
    Vector rho;
    Vector eccentricity;
    Matrix rates;           // n_cells x 8
    double max_rate = 0.0;  // over all cells and directions
};
SpreadRates spread_rates(const WindField& wind);

/// Largest step keeping spread below one cell length, shrunk so the horizon
/// divides evenly: dt = T / ceil(T / (l / max_rate)).
double compute_time_step(const SpreadRates& rates, double total_time, double cell_length);

enum class CellStatus : std::uint8_t { unburned = 0, burning = 1, burned_down = 2 };

struct FireState {
    Index nx = 0;
    Index ny = 0;
    double cell_length = 0.0;
    std::vector<CellStatus> status;  // row-major
    Vector ignition_time;            // absolute seconds; meaningful where ignited
    Matrix spread;                   // n_cells x 8 accumulated distances (meters)
    double time = 0.0;               // absolute time
    double time_origin = 0.0;        // absolute time of step 0 of this leg
    Index steps_taken = 0;
    IndexList burning;  // sorted indices of burning cells

    Index cell(Index i, Index j) const { return i * nx + j; }
    bool ignited(Index c) const { return status[static_cast<size_t>(c)] != CellStatus::unburned; }
};

/// Fresh state with the configured ignition cell burning at t = 0.
FireState init_fire_state(const FireConfig& config);

/// One synchronous step: burning cells accumulate R(theta)*dt per direction
/// against a snapshot of the pre-step statuses; a neighbor ignites when the
/// accumulated distance reaches the center distance (l straight, l*sqrt(2)
/// diagonal) and receives the excess as spillover in the triggering
/// direction (largest excess wins when several sources fire at once);
/// burning cells whose eight in-domain neighbors were all ignited before the
/// step burn down. Newly ignited cells carry t_ignite = time at step end.
void step_fire(FireState& state, const SpreadRates& rates, double dt);

void advance_fire(FireState& state, const SpreadRates& rates, double dt, Index n_steps);

/// Continuous state: 0 for unburned cells, (t - t_ignite)/t for ignited
/// ones, clamped to [0, 1]; row-major vectorization. Requires t > 0.
Vector extract_state_vector(const FireState& state, double t);

/// Inverse of extract_state_vector for restarts: entries s > 0 become
/// burning cells with t_ignite = t*(1-s) snapped to the dt grid (ignitions
/// only happen at step boundaries) and clamped to [0, t]; spread
/// accumulators start at zero and burned-down statuses re-emerge from the
/// neighbor rule on the first step.
FireState state_from_vector(const Vector& s, const FireConfig& config, double t, double dt);

/// Run the automaton one further leg of config.sim_time seconds from the
/// state vector at time t0 and return the state vector at t0 + sim_time.
/// The step is recomputed from the rates for the new leg.
Vector continue_from_state(const Vector& s, double t0, const FireConfig& config,
                           const SpreadRates& rates);

/// Ensemble generation. Simulation k uses RNG substream k; the first n_train
/// one-hour states form the training matrix, the rest are test cases stored
/// with their one-hour status codes and two-hour continuations.
struct FireEnsembleConfig {
    FireConfig base;
    Index n_sims = 250;
    Index n_train = 200;

    void validate() const;
};

struct FireEnsemble {
    Matrix train;        // n_cells x n_train
    Matrix test_1h;      // n_cells x n_test
    Matrix test_2h;      // n_cells x n_test (continuations via state restart)
    Matrix test_status;  // n_cells x n_test, codes 0/1/2 at one hour
    std::vector<double> dt;  // per test case
};

FireEnsemble run_fire_ensemble(const FireEnsembleConfig& config, Index threads = 0);

/// Ensemble plus file outputs: train.cdmx, test_1h.cdmx, test_2h.cdmx,
/// test_status.cdmx, meta.csv (per-sim wind draws and time step) and
/// manifest.txt under out_dir.
void run_fire_sim_to_dir(const FireEnsembleConfig& config, const std::string& out_dir,
                         Index threads = 0);

enum class SensorScenario { restricted_lines, random_burning };

struct FireReconConfig {
    SensorScenario scenario = SensorScenario::restricted_lines;
    std::vector<Index> sensor_counts;
    PenaltyParams params;
    std::vector<double> line_y = {400.0, 500.0, 600.0};  // restricted rows, meters
    Index threads = 0;
};

struct FireReconResult {
    std::vector<CaseRecord> records;
    std::vector<SummaryRow> summary;
    double max_bound_violation = 0.0;
    /// Reconstruction matrices (n_cells x n_test) per entry of sensor_counts,
    /// kept for the forecast stage.
    std::vector<Matrix> recon_deim;
    std::vector<Matrix> recon_cdeim;
};

/// Reconstruction experiment over a generated ensemble directory. The random
/// scenario samples r distinct burning cells per test case from substream
/// kSensorStreamBase + case.
FireReconResult run_fire_recon(const std::string& sim_dir, const FireReconConfig& config);
void run_fire_recon_to_dir(const std::string& sim_dir, const FireReconConfig& config,
                           const std::string& out_dir);

inline constexpr std::uint64_t kSensorStreamBase = 0x100000000ull;

struct ForecastResult {
    std::vector<CaseRecord> records;  // rel_l2 of two-hour forecasts
    std::vector<SummaryRow> summary;
};

/// Two-hour forecasts from stored reconstructions: threshold to [0, 1],
/// floor entries below dt/t, restart the automaton and compare against the
/// stored two-hour truth.
ForecastResult run_fire_forecast(const std::string& sim_dir, const std::string& recon_dir,
                                 Index r, Index threads = 0);
void run_fire_forecast_to_dir(const std::string& sim_dir, const std::string& recon_dir, Index r,
                              const std::string& out_dir, Index threads = 0);

}  // namespace cdeim
