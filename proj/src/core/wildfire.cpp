#include "core/wildfire.hpp"

#include "core/errors.hpp"
#include "core/matrix_io.hpp"
#include "core/metrics.hpp"
#include "core/parallel.hpp"
#include "core/placement.hpp"
#include "core/pod.hpp"
#include "core/version.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace cdeim {
namespace {

constexpr double kDiffusionFloor = 5e-3;   // m/s, spread in still air
constexpr double kLengthWidthSlope = 0.5592;

// Neighbor offsets per direction d (angle d*pi/4, 0 along +x, pi/2 along +y):
// row offset di (y) and column offset dj (x).
constexpr int kDi[kNumDirections] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDj[kNumDirections] = {1, 1, 0, -1, -1, -1, 0, 1};

double center_distance(int d, double cell_length) {
    return (d % 2 == 0) ? cell_length : cell_length * std::numbers::sqrt2;
}

}  // namespace

void FireConfig::validate() const {
    if (!(cell_length > 0.0) || !(domain_x > 0.0) || !(domain_y > 0.0)) {
        throw validation_error("FireConfig: domain and cell length must be positive");
    }
    const double rx = domain_x / cell_length;
    const double ry = domain_y / cell_length;
    if (std::abs(rx - std::round(rx)) > 1e-9 || std::abs(ry - std::round(ry)) > 1e-9) {
        throw validation_error("FireConfig: cell length must divide both domain extents");
    }
    if (ignition_x < 0.0 || ignition_x >= domain_x || ignition_y < 0.0 ||
        ignition_y >= domain_y) {
        throw validation_error("FireConfig: ignition point outside the domain");
    }
    if (!(sim_time > 0.0)) {
        throw validation_error("FireConfig: sim_time must be positive");
    }
}

Index FireConfig::ignition_cell() const {
    const Index i = static_cast<Index>(ignition_y / cell_length);
    const Index j = static_cast<Index>(ignition_x / cell_length);
    return i * nx() + j;
}

WindDraws draw_wind(CounterRng& rng) {
    WindDraws draws;
    draws.amp_a = rng.normal();
    draws.amp_b = rng.normal();
    draws.phase1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    draws.phase2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return draws;
}

double stream_function(const FireConfig& config, const WindDraws& draws, double x, double y) {
    const double two_pi = 2.0 * std::numbers::pi;
    return config.base_wind * y +
           config.perturbation *
               (draws.amp_a * (config.domain_x / config.frequency) *
                    std::cos(two_pi * config.frequency * x / config.domain_x + draws.phase1) +
                draws.amp_b * (config.domain_y / config.frequency) *
                    std::sin(two_pi * config.frequency * y / config.domain_y + draws.phase2));
}

WindField build_wind_field(const FireConfig& config, const WindDraws& draws) {
    config.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    WindField wind;
    wind.nx = config.nx();
    wind.ny = config.ny();
    const Index n = wind.nx * wind.ny;
    wind.vx.resize(n);
    wind.vy.resize(n);
    wind.speed.resize(n);
    wind.angle.resize(n);
    for (Index i = 0; i < wind.ny; ++i) {
        const double y = (static_cast<double>(i) + 0.5) * config.cell_length;
        const double vx_row =
            config.base_wind +
            config.perturbation * two_pi * draws.amp_b *
                std::cos(two_pi * config.frequency * y / config.domain_y + draws.phase2);
        for (Index j = 0; j < wind.nx; ++j) {
            const double x = (static_cast<double>(j) + 0.5) * config.cell_length;
            const double vy_cell =
                config.perturbation * two_pi * draws.amp_a *
                std::sin(two_pi * config.frequency * x / config.domain_x + draws.phase1);
            const Index c = i * wind.nx + j;
            wind.vx(c) = vx_row;
            wind.vy(c) = vy_cell;
            wind.speed(c) = std::hypot(vx_row, vy_cell);
            wind.angle(c) = std::atan2(vy_cell, vx_row);
        }
    }
    return wind;
}

SpreadRates spread_rates(const WindField& wind) {
    if (!wind.speed.allFinite()) {
        throw validation_error("spread_rates: wind field has non-finite entries");
    }
    SpreadRates rates;
    rates.nx = wind.nx;
    rates.ny = wind.ny;
    const Index n = wind.speed.size();
    rates.r_max.resize(n);
    rates.rho.resize(n);
    rates.eccentricity.resize(n);
    rates.rates.resize(n, kNumDirections);
    double max_rate = 0.0;
    for (Index c = 0; c < n; ++c) {
        const double speed = wind.speed(c);
        const double r_max = 0.1 * speed + kDiffusionFloor;
        const double rho = 1.0 + kLengthWidthSlope * speed;
        const double ecc = std::sqrt(1.0 - 1.0 / (rho * rho));
        rates.r_max(c) = r_max;
        rates.rho(c) = rho;
        rates.eccentricity(c) = ecc;
        for (int d = 0; d < kNumDirections; ++d) {
            const double theta = static_cast<double>(d) * std::numbers::pi / 4.0;
            const double rate =
                r_max * (1.0 - ecc) / (1.0 - ecc * std::cos(theta - wind.angle(c)));
            rates.rates(c, d) = rate;
            max_rate = std::max(max_rate, rate);
        }
    }
    rates.max_rate = max_rate;
    return rates;
}

double compute_time_step(const SpreadRates& rates, double total_time, double cell_length) {
    if (!(rates.max_rate > 0.0)) {
        throw numerical_error("compute_time_step: maximum spread rate is zero");
    }
    if (!(total_time > 0.0)) {
        throw validation_error("compute_time_step: total_time must be positive");
    }
    const double dt_max = cell_length / rates.max_rate;
    const double n_steps = std::ceil(total_time / dt_max);
    return total_time / n_steps;
}

FireState init_fire_state(const FireConfig& config) {
    config.validate();
    FireState state;
    state.nx = config.nx();
    state.ny = config.ny();
    state.cell_length = config.cell_length;
    const Index n = state.nx * state.ny;
    state.status.assign(static_cast<size_t>(n), CellStatus::unburned);
    state.ignition_time = Vector::Zero(n);
    state.spread = Matrix::Zero(n, kNumDirections);
    const Index c0 = config.ignition_cell();
    state.status[static_cast<size_t>(c0)] = CellStatus::burning;
    state.burning.push_back(c0);
    return state;
}

void step_fire(FireState& state, const SpreadRates& rates, double dt) {
    if (rates.nx != state.nx || rates.ny != state.ny) {
        throw validation_error("step_fire: rates grid does not match state grid");
    }
    const Index nx = state.nx;
    const Index ny = state.ny;

    // Phase 1: accumulate spread against the pre-step statuses and collect
    // ignition candidates (max spillover wins on collisions).
    std::map<Index, std::pair<double, int>> ignitions;  // cell -> (spill, direction)
    for (Index c : state.burning) {
        const Index i = c / nx;
        const Index j = c % nx;
        for (int d = 0; d < kNumDirections; ++d) {
            state.spread(c, d) += rates.rates(c, d) * dt;
            const Index ni = i + kDi[d];
            const Index nj = j + kDj[d];
            if (ni < 0 || ni >= ny || nj < 0 || nj >= nx) {
                continue;
            }
            const Index nb = ni * nx + nj;
            if (state.status[static_cast<size_t>(nb)] != CellStatus::unburned) {
                continue;
            }
            const double dist = center_distance(d, state.cell_length);
            if (state.spread(c, d) < dist) {
                continue;
            }
            const double spill = state.spread(c, d) - dist;
            auto [it, inserted] = ignitions.try_emplace(nb, spill, d);
            if (!inserted && spill > it->second.first) {
                it->second = {spill, d};
            }
        }
    }

    // Phase 2: burn-down rule on the pre-step statuses.
    IndexList burned_down;
    for (Index c : state.burning) {
        const Index i = c / nx;
        const Index j = c % nx;
        bool surrounded = true;
        for (int d = 0; d < kNumDirections && surrounded; ++d) {
            const Index ni = i + kDi[d];
            const Index nj = j + kDj[d];
            if (ni < 0 || ni >= ny || nj < 0 || nj >= nx) {
                continue;  // out-of-domain neighbors count as ignited
            }
            surrounded = state.status[static_cast<size_t>(ni * nx + nj)] != CellStatus::unburned;
        }
        if (surrounded) {
            burned_down.push_back(c);
        }
    }

    // Phase 3: apply transitions; time advances by one step.
    ++state.steps_taken;
    state.time = state.time_origin + static_cast<double>(state.steps_taken) * dt;
    for (Index c : burned_down) {
        state.status[static_cast<size_t>(c)] = CellStatus::burned_down;
    }
    for (const auto& [nb, hit] : ignitions) {
        state.status[static_cast<size_t>(nb)] = CellStatus::burning;
        state.ignition_time(nb) = state.time;
        state.spread.row(nb).setZero();
        state.spread(nb, hit.second) = hit.first;
    }

    // Phase 4: rebuild the sorted burning list.
    IndexList next;
    next.reserve(state.burning.size() + ignitions.size());
    auto it_new = ignitions.begin();
    for (Index c : state.burning) {
        if (state.status[static_cast<size_t>(c)] != CellStatus::burning) {
            continue;
        }
        while (it_new != ignitions.end() && it_new->first < c) {
            next.push_back(it_new->first);
            ++it_new;
        }
        next.push_back(c);
    }
    for (; it_new != ignitions.end(); ++it_new) {
        next.push_back(it_new->first);
    }
    state.burning = std::move(next);
}

void advance_fire(FireState& state, const SpreadRates& rates, double dt, Index n_steps) {
    for (Index k = 0; k < n_steps; ++k) {
        step_fire(state, rates, dt);
    }
}

Vector extract_state_vector(const FireState& state, double t) {
    if (!(t > 0.0)) {
        throw validation_error("extract_state_vector: t must be positive");
    }
    const Index n = state.nx * state.ny;
    Vector s = Vector::Zero(n);
    for (Index c = 0; c < n; ++c) {
        if (state.status[static_cast<size_t>(c)] == CellStatus::unburned) {
            continue;
        }
        s(c) = std::clamp((t - state.ignition_time(c)) / t, 0.0, 1.0);
    }
    return s;
}

FireState state_from_vector(const Vector& s, const FireConfig& config, double t, double dt) {
    config.validate();
    if (s.size() != config.n_cells()) {
        throw validation_error("state_from_vector: state length does not match grid");
    }
    if (!(t > 0.0) || !(dt > 0.0)) {
        throw validation_error("state_from_vector: t and dt must be positive");
    }

    FireState state;
    state.nx = config.nx();
    state.ny = config.ny();
    state.cell_length = config.cell_length;
    const Index n = state.nx * state.ny;
    state.status.assign(static_cast<size_t>(n), CellStatus::unburned);
    state.ignition_time = Vector::Zero(n);
    state.spread = Matrix::Zero(n, kNumDirections);
    state.time = t;
    state.time_origin = t;

    const auto max_step = static_cast<long long>(std::llround(t / dt));
    for (Index c = 0; c < n; ++c) {
        if (!(s(c) > 0.0)) {
            continue;
        }
        long long k = std::llround(t * (1.0 - std::min(s(c), 1.0)) / dt);
        k = std::clamp<long long>(k, 0, max_step);
        state.status[static_cast<size_t>(c)] = CellStatus::burning;
        state.ignition_time(c) = static_cast<double>(k) * dt;
        state.burning.push_back(c);
    }
    return state;
}

Vector continue_from_state(const Vector& s, double t0, const FireConfig& config,
                           const SpreadRates& rates) {
    const double dt = compute_time_step(rates, config.sim_time, config.cell_length);
    const auto n_steps = static_cast<Index>(std::llround(config.sim_time / dt));
    FireState state = state_from_vector(s, config, t0, dt);
    advance_fire(state, rates, dt, n_steps);
    return extract_state_vector(state, t0 + config.sim_time);
}

void FireEnsembleConfig::validate() const {
    base.validate();
    if (n_sims < 2 || n_train < 1 || n_train >= n_sims) {
        throw validation_error("FireEnsembleConfig: need 1 <= n_train < n_sims");
    }
}

namespace {

struct SingleSim {
    WindDraws draws;
    double dt = 0.0;
    Index n_steps = 0;
    Vector one_hour;
    Vector two_hour;       // filled for test sims only
    Vector status_codes;   // filled for test sims only
};

SingleSim simulate_one(const FireConfig& config, std::uint64_t stream, bool with_followup) {
    SingleSim sim;
    CounterRng rng(config.seed, stream);
    sim.draws = draw_wind(rng);
    const WindField wind = build_wind_field(config, sim.draws);
    const SpreadRates rates = spread_rates(wind);
    sim.dt = compute_time_step(rates, config.sim_time, config.cell_length);
    sim.n_steps = static_cast<Index>(std::llround(config.sim_time / sim.dt));

    FireState state = init_fire_state(config);
    advance_fire(state, rates, sim.dt, sim.n_steps);
    sim.one_hour = extract_state_vector(state, config.sim_time);

    if (with_followup) {
        const Index n = config.n_cells();
        sim.status_codes.resize(n);
        for (Index c = 0; c < n; ++c) {
            sim.status_codes(c) = static_cast<double>(state.status[static_cast<size_t>(c)]);
        }
        // The two-hour truth restarts from the recorded one-hour state, the
        // same entry point forecasts use, so reconstruction quality is the
        // only difference between truth and forecast.
        sim.two_hour = continue_from_state(sim.one_hour, config.sim_time, config, rates);
    }
    return sim;
}

}  // namespace

FireEnsemble run_fire_ensemble(const FireEnsembleConfig& config, Index threads) {
    config.validate();
    const Index n = config.base.n_cells();
    const Index n_test = config.n_sims - config.n_train;

    FireEnsemble ensemble;
    ensemble.train.resize(n, config.n_train);
    ensemble.test_1h.resize(n, n_test);
    ensemble.test_2h.resize(n, n_test);
    ensemble.test_status.resize(n, n_test);
    ensemble.dt.assign(static_cast<size_t>(n_test), 0.0);

    parallel_for(config.n_sims, threads, [&](Index k) {
        const bool is_test = k >= config.n_train;
        SingleSim sim = simulate_one(config.base, static_cast<std::uint64_t>(k), is_test);
        if (is_test) {
            const Index t = k - config.n_train;
            ensemble.test_1h.col(t) = sim.one_hour;
            ensemble.test_2h.col(t) = sim.two_hour;
            ensemble.test_status.col(t) = sim.status_codes;
            ensemble.dt[static_cast<size_t>(t)] = sim.dt;
        } else {
            ensemble.train.col(k) = sim.one_hour;
        }
    });
    return ensemble;
}

void run_fire_sim_to_dir(const FireEnsembleConfig& config, const std::string& out_dir,
                         Index threads) {
    namespace fs = std::filesystem;
    config.validate();
    fs::create_directories(out_dir);

    const FireEnsemble ensemble = run_fire_ensemble(config, threads);
    write_matrix(ensemble.train, (fs::path(out_dir) / "train.cdmx").string());
    write_matrix(ensemble.test_1h, (fs::path(out_dir) / "test_1h.cdmx").string());
    write_matrix(ensemble.test_2h, (fs::path(out_dir) / "test_2h.cdmx").string());
    write_matrix(ensemble.test_status, (fs::path(out_dir) / "test_status.cdmx").string());

    // Per-sim metadata; wind draws are regenerated from (seed, stream) by
    // later stages, this file documents them.
    std::ofstream meta((fs::path(out_dir) / "meta.csv").string());
    if (!meta) {
        throw io_error(out_dir + "/meta.csv: cannot open for writing");
    }
    meta << "sim,stream,split,amp_a,amp_b,phase1,phase2,dt,n_steps\n";
    for (Index k = 0; k < config.n_sims; ++k) {
        CounterRng rng(config.base.seed, static_cast<std::uint64_t>(k));
        const WindDraws draws = draw_wind(rng);
        const WindField wind = build_wind_field(config.base, draws);
        const SpreadRates rates = spread_rates(wind);
        const double dt = compute_time_step(rates, config.base.sim_time,
                                            config.base.cell_length);
        meta << k << ',' << k << ',' << (k < config.n_train ? "train" : "test") << ','
             << format_double(draws.amp_a) << ',' << format_double(draws.amp_b) << ','
             << format_double(draws.phase1) << ',' << format_double(draws.phase2) << ','
             << format_double(dt) << ','
             << static_cast<Index>(std::llround(config.base.sim_time / dt)) << '\n';
    }
    meta.close();

    write_manifest((fs::path(out_dir) / "manifest.txt").string(),
                   {{"tool", "cdeim fire-sim"},
                    {"version", kVersion},
                    {"seed", std::to_string(config.base.seed)},
                    {"n_sims", std::to_string(config.n_sims)},
                    {"n_train", std::to_string(config.n_train)},
                    {"domain_x", format_double(config.base.domain_x)},
                    {"domain_y", format_double(config.base.domain_y)},
                    {"cell_length", format_double(config.base.cell_length)},
                    {"ignition_x", format_double(config.base.ignition_x)},
                    {"ignition_y", format_double(config.base.ignition_y)},
                    {"base_wind", format_double(config.base.base_wind)},
                    {"perturbation", format_double(config.base.perturbation)},
                    {"frequency", format_double(config.base.frequency)},
                    {"sim_time", format_double(config.base.sim_time)}});
}

namespace {

FireEnsembleConfig ensemble_config_from_manifest(const std::string& sim_dir) {
    namespace fs = std::filesystem;
    const std::string path = (fs::path(sim_dir) / "manifest.txt").string();
    std::ifstream in(path);
    if (!in) {
        throw io_error(path + ": cannot open ensemble manifest");
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            continue;
        }
        kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    FireEnsembleConfig config;
    const auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw io_error(path + ": missing manifest key '" + key + "'");
        }
        return it->second;
    };
    config.base.seed = std::stoull(need("seed"));
    config.n_sims = std::stoll(need("n_sims"));
    config.n_train = std::stoll(need("n_train"));
    config.base.domain_x = std::stod(need("domain_x"));
    config.base.domain_y = std::stod(need("domain_y"));
    config.base.cell_length = std::stod(need("cell_length"));
    config.base.ignition_x = std::stod(need("ignition_x"));
    config.base.ignition_y = std::stod(need("ignition_y"));
    config.base.base_wind = std::stod(need("base_wind"));
    config.base.perturbation = std::stod(need("perturbation"));
    config.base.frequency = std::stod(need("frequency"));
    config.base.sim_time = std::stod(need("sim_time"));
    config.validate();
    return config;
}

AccessMask line_mask(const FireConfig& config, const std::vector<double>& line_y) {
    AccessMask mask(static_cast<size_t>(config.n_cells()), 0);
    const Index nx = config.nx();
    for (double y : line_y) {
        const Index i = static_cast<Index>(y / config.cell_length);
        if (i < 0 || i >= config.ny()) {
            throw validation_error("fire recon: sensor line outside the domain");
        }
        for (Index j = 0; j < nx; ++j) {
            mask[static_cast<size_t>(i * nx + j)] = 1;
        }
    }
    return mask;
}

}  // namespace

FireReconResult run_fire_recon(const std::string& sim_dir, const FireReconConfig& config) {
    namespace fs = std::filesystem;
    config.params.validate();
    if (config.sensor_counts.empty()) {
        throw validation_error("run_fire_recon: no sensor counts given");
    }
    const FireEnsembleConfig sim_config = ensemble_config_from_manifest(sim_dir);
    const Matrix train = read_matrix((fs::path(sim_dir) / "train.cdmx").string());
    const Matrix test_1h = read_matrix((fs::path(sim_dir) / "test_1h.cdmx").string());
    const Matrix status = read_matrix((fs::path(sim_dir) / "test_status.cdmx").string());
    const Index n_test = test_1h.cols();
    const BoundsSpec bounds{0.0, 1.0};

    Index r_max = 0;
    for (Index r : config.sensor_counts) {
        r_max = std::max(r_max, r);
    }
    const Matrix pod_full = compute_pod_basis(train, r_max);

    FireReconResult result;
    for (Index r : config.sensor_counts) {
        const Matrix phi = pod_full.leftCols(r);
        Matrix recon_deim(test_1h.rows(), n_test);
        Matrix recon_cdeim(test_1h.rows(), n_test);
        std::vector<CaseRecord> batch(static_cast<size_t>(2 * n_test));
        std::vector<double> violations(static_cast<size_t>(n_test), 0.0);

        // Shared bundle for the line scenario; per-case bundles otherwise.
        BasisBundle shared_bundle;
        if (config.scenario == SensorScenario::restricted_lines) {
            const AccessMask mask = line_mask(sim_config.base, config.line_y);
            bool rank_warning = false;
            const IndexList sensors = restricted_cpqr_select(phi, mask, r, &rank_warning);
            shared_bundle = assemble_bundle(phi, sensors);
        }

        parallel_for(n_test, config.threads, [&](Index j) {
            const Vector truth = test_1h.col(j);

            CaseRecord deim_rec;
            deim_rec.case_index = j;
            deim_rec.r = r;
            deim_rec.method = "deim";
            CaseRecord cdeim_rec;
            cdeim_rec.case_index = j;
            cdeim_rec.r = r;
            cdeim_rec.method = "cdeim";

            const BasisBundle* bundle = &shared_bundle;
            BasisBundle local_bundle;
            if (config.scenario == SensorScenario::random_burning) {
                IndexList candidates;
                for (Index c = 0; c < status.rows(); ++c) {
                    if (status(c, j) == static_cast<double>(CellStatus::burning)) {
                        candidates.push_back(c);
                    }
                }
                if (static_cast<Index>(candidates.size()) < r) {
                    deim_rec.feasible = false;
                    deim_rec.error = "too_few_burning_cells";
                    cdeim_rec.feasible = false;
                    cdeim_rec.error = "too_few_burning_cells";
                    recon_deim.col(j).setZero();
                    recon_cdeim.col(j).setZero();
                    batch[static_cast<size_t>(2 * j)] = std::move(deim_rec);
                    batch[static_cast<size_t>(2 * j + 1)] = std::move(cdeim_rec);
                    return;
                }
                // Partial Fisher-Yates draw of r distinct burning cells.
                CounterRng rng(sim_config.base.seed,
                               kSensorStreamBase + static_cast<std::uint64_t>(j));
                IndexList sensors;
                sensors.reserve(static_cast<size_t>(r));
                for (Index k = 0; k < r; ++k) {
                    const auto pick = static_cast<size_t>(
                        k + static_cast<Index>(rng.below(candidates.size() - k)));
                    std::swap(candidates[static_cast<size_t>(k)], candidates[pick]);
                    sensors.push_back(candidates[static_cast<size_t>(k)]);
                }
                local_bundle = assemble_bundle(phi, sensors);
                bundle = &local_bundle;
            }

            Vector y(r);
            for (Index k = 0; k < r; ++k) {
                y(k) = truth(bundle->sensor_indices[static_cast<size_t>(k)]);
            }
            if (y.norm() == 0.0) {
                deim_rec.feasible = false;
                deim_rec.error = "zero_observations";
                cdeim_rec.feasible = false;
                cdeim_rec.error = "zero_observations";
                recon_deim.col(j).setZero();
                recon_cdeim.col(j).setZero();
                batch[static_cast<size_t>(2 * j)] = std::move(deim_rec);
                batch[static_cast<size_t>(2 * j + 1)] = std::move(cdeim_rec);
                return;
            }

            const Vector alpha_d = deim_solve(*bundle, y);
            const Vector u_d = bundle->phi * alpha_d;
            recon_deim.col(j) = u_d;
            deim_rec.rel_l2 = relative_l2(truth, u_d);
            deim_rec.rel_obs_residual = relative_obs_residual(bundle->theta, alpha_d, y);
            deim_rec.bound_violation = max_bound_violation(u_d, bounds);
            batch[static_cast<size_t>(2 * j)] = std::move(deim_rec);

            try {
                const SolveOutcome outcome = cdeim_solve(*bundle, y, bounds, config.params);
                recon_cdeim.col(j) = outcome.reconstruction;
                cdeim_rec.rel_l2 = relative_l2(truth, outcome.reconstruction);
                cdeim_rec.rel_obs_residual =
                    relative_obs_residual(bundle->theta, outcome.alpha, y);
                cdeim_rec.lambda_opt = outcome.lambda_opt;
                cdeim_rec.bound_violation = outcome.bound_violation_max;
                violations[static_cast<size_t>(j)] = outcome.bound_violation_max;
            } catch (const infeasible_error&) {
                cdeim_rec.feasible = false;
                cdeim_rec.error = "infeasible";
                recon_cdeim.col(j).setZero();
            } catch (const no_convergence_error&) {
                cdeim_rec.feasible = false;
                cdeim_rec.error = "no_convergence";
                recon_cdeim.col(j).setZero();
            }
            batch[static_cast<size_t>(2 * j + 1)] = std::move(cdeim_rec);
        });

        for (double v : violations) {
            result.max_bound_violation = std::max(result.max_bound_violation, v);
        }
        result.records.insert(result.records.end(), batch.begin(), batch.end());
        result.recon_deim.push_back(std::move(recon_deim));
        result.recon_cdeim.push_back(std::move(recon_cdeim));
    }

    result.summary = aggregate_records(result.records);
    return result;
}

void run_fire_recon_to_dir(const std::string& sim_dir, const FireReconConfig& config,
                           const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const FireReconResult result = run_fire_recon(sim_dir, config);
    write_case_records_csv(result.records, (fs::path(out_dir) / "records.csv").string());
    write_summary_csv(result.summary, (fs::path(out_dir) / "summary.csv").string());
    for (size_t t = 0; t < config.sensor_counts.size(); ++t) {
        const std::string suffix = "_r" + std::to_string(config.sensor_counts[t]) + ".cdmx";
        write_matrix(result.recon_deim[t], (fs::path(out_dir) / ("recon_deim" + suffix)).string());
        write_matrix(result.recon_cdeim[t],
                     (fs::path(out_dir) / ("recon_cdeim" + suffix)).string());
    }
}

ForecastResult run_fire_forecast(const std::string& sim_dir, const std::string& recon_dir,
                                 Index r, Index threads) {
    namespace fs = std::filesystem;
    const FireEnsembleConfig sim_config = ensemble_config_from_manifest(sim_dir);
    const Matrix test_2h = read_matrix((fs::path(sim_dir) / "test_2h.cdmx").string());
    const std::string suffix = "_r" + std::to_string(r) + ".cdmx";
    const Matrix recon_deim = read_matrix((fs::path(recon_dir) / ("recon_deim" + suffix)).string());
    const Matrix recon_cdeim =
        read_matrix((fs::path(recon_dir) / ("recon_cdeim" + suffix)).string());
    const Index n_test = test_2h.cols();
    if (recon_deim.cols() != n_test || recon_cdeim.cols() != n_test) {
        throw validation_error("run_fire_forecast: reconstruction/test case counts differ");
    }
    const BoundsSpec bounds{0.0, 1.0};

    ForecastResult result;
    result.records.resize(static_cast<size_t>(2 * n_test));
    parallel_for(n_test, threads, [&](Index j) {
        const std::uint64_t stream = static_cast<std::uint64_t>(sim_config.n_train + j);
        CounterRng rng(sim_config.base.seed, stream);
        const WindDraws draws = draw_wind(rng);
        const WindField wind = build_wind_field(sim_config.base, draws);
        const SpreadRates rates = spread_rates(wind);
        const double dt =
            compute_time_step(rates, sim_config.base.sim_time, sim_config.base.cell_length);
        const double floor_epsilon = dt / sim_config.base.sim_time;

        const auto forecast_error = [&](const Matrix& recon, const char* method, Index slot) {
            CaseRecord rec;
            rec.case_index = j;
            rec.r = r;
            rec.method = method;
            if (recon.col(j).isZero(0.0)) {
                rec.feasible = false;
                rec.error = "missing_reconstruction";
            } else {
                const Vector init =
                    threshold_reconstruction(recon.col(j), bounds, floor_epsilon);
                const Vector predicted =
                    continue_from_state(init, sim_config.base.sim_time, sim_config.base, rates);
                rec.rel_l2 = relative_l2(test_2h.col(j), predicted);
            }
            result.records[static_cast<size_t>(slot)] = std::move(rec);
        };
        forecast_error(recon_deim, "deim", 2 * j);
        forecast_error(recon_cdeim, "cdeim", 2 * j + 1);
    });

    result.summary = aggregate_records(result.records);
    return result;
}

void run_fire_forecast_to_dir(const std::string& sim_dir, const std::string& recon_dir, Index r,
                              const std::string& out_dir, Index threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const ForecastResult result = run_fire_forecast(sim_dir, recon_dir, r, threads);
    write_case_records_csv(result.records, (fs::path(out_dir) / "forecast_records.csv").string());
    write_summary_csv(result.summary, (fs::path(out_dir) / "forecast_summary.csv").string());
}

}  // namespace cdeim
