// cdeim command line tool. Everything numerical goes through the shared
// library's C API; this file only parses arguments, moves small text files
// around and reports outcomes.

#include "cdeim/cdeim.h"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

// Exit codes by failure category (sysexits-flavored).
constexpr int kExitUsage = 64;
constexpr int kExitValidation = 65;
constexpr int kExitIo = 66;
constexpr int kExitInfeasible = 69;
constexpr int kExitNumerical = 70;

int exit_code_for(cdeim_status status) {
    switch (status) {
        case CDEIM_OK:
            return 0;
        case CDEIM_ERR_INVALID_ARGUMENT:
            return kExitValidation;
        case CDEIM_ERR_IO:
            return kExitIo;
        case CDEIM_ERR_INFEASIBLE:
            return kExitInfeasible;
        case CDEIM_ERR_NUMERICAL:
        case CDEIM_ERR_NO_CONVERGENCE:
        case CDEIM_ERR_INTERNAL:
            return kExitNumerical;
    }
    return kExitNumerical;
}

// Every failed API call lands here: print a category-tagged message and quit.
void check(cdeim_status status) {
    if (status == CDEIM_OK) {
        return;
    }
    std::cerr << "cdeim: error [" << cdeim_status_name(status) << "] " << cdeim_last_error()
              << '\n';
    std::exit(exit_code_for(status));
}

void fail_io(const std::string& message) {
    std::cerr << "cdeim: error [io] " << message << '\n';
    std::exit(kExitIo);
}

std::string default_out_dir() {
    const char* env = std::getenv("CDEIM_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : ".";
}

struct MatrixHandle {
    cdeim_matrix* m = nullptr;
    ~MatrixHandle() { cdeim_matrix_destroy(m); }
};

struct BundleHandle {
    cdeim_bundle* b = nullptr;
    ~BundleHandle() { cdeim_bundle_destroy(b); }
};

std::vector<int64_t> read_sensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail_io(path + ": cannot open for reading");
    }
    std::vector<int64_t> indices;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        try {
            indices.push_back(std::stoll(line));
        } catch (const std::exception&) {
            fail_io(path + ": cannot parse '" + line + "' as an index");
        }
    }
    if (indices.empty()) {
        fail_io(path + ": empty sensor list");
    }
    return indices;
}

void write_sensor_file(const std::vector<int64_t>& indices, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        fail_io(path + ": cannot open for writing");
    }
    for (int64_t idx : indices) {
        out << idx << '\n';
    }
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_text_record(const std::string& path, const KeyValues& entries) {
    std::ofstream out(path);
    if (!out) {
        fail_io(path + ": cannot open for writing");
    }
    for (const auto& [key, value] : entries) {
        out << key << " = " << value << '\n';
    }
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Shared solver-parameter flags; every reconstruction-flavored subcommand
// carries the same set.
void add_solver_flags(CLI::App* cmd, cdeim_solver_params* params) {
    cmd->add_option("--lambda-init", params->lambda_init, "Initial penalty parameter");
    cmd->add_option("--gamma", params->gamma, "Penalty growth factor (> 1)");
    cmd->add_option("--delta", params->delta, "Stopping tolerance on the total penalty");
    cmd->add_option("--tau", params->tau, "Newton step tolerance");
    cmd->add_option("--tau-lambda", params->tau_lambda, "Bisection interval tolerance");
    cmd->add_option("--lambda-cap", params->lambda_cap, "Penalty parameter cap");
    cmd->add_option("--max-newton-iters", params->max_newton_iters, "Newton iteration cap");
}

KeyValues solver_entries(const cdeim_solver_params& params) {
    return {{"lambda_init", format_g17(params.lambda_init)},
            {"gamma", format_g17(params.gamma)},
            {"delta", format_g17(params.delta)},
            {"tau", format_g17(params.tau)},
            {"tau_lambda", format_g17(params.tau_lambda)},
            {"lambda_cap", format_g17(params.lambda_cap)},
            {"max_newton_iters", std::to_string(params.max_newton_iters)}};
}

class RunManifest {
public:
    RunManifest(std::string command, std::string out_dir)
        : command_(std::move(command)),
          out_dir_(std::move(out_dir)),
          start_(std::chrono::steady_clock::now()) {}

    void add(const std::string& key, const std::string& value) { entries_.push_back({key, value}); }
    void add(const KeyValues& kv) { entries_.insert(entries_.end(), kv.begin(), kv.end()); }

    // Seed + full parameter set + version + wall time, enough to reproduce
    // the run byte for byte (wall time aside).
    void write() const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        KeyValues all;
        all.push_back({"command", command_});
        all.push_back({"version", cdeim_version()});
        all.insert(all.end(), entries_.begin(), entries_.end());
        all.push_back({"wall_time_s", format_g17(wall)});
        write_text_record((fs::path(out_dir_) / (command_ + "_manifest.txt")).string(), all);
    }

private:
    std::string command_;
    std::string out_dir_;
    KeyValues entries_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded-field reconstruction from sparse sensors (DEIM / constrained DEIM)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key = value config file");
    app.set_version_flag("--version", cdeim_version());

    std::string out_dir = default_out_dir();
    int64_t threads = 0;
    app.add_option("--out-dir", out_dir, "Output directory (env CDEIM_OUT_DIR)")
        ->capture_default_str();
    app.add_option("--threads", threads, "Max worker threads (0 = all cores)");

    // ------------------------------------------------------------------ pod
    auto* pod = app.add_subcommand("pod", "Compute a POD basis from a snapshot matrix");
    std::string pod_snapshots;
    std::string pod_out = "phi.cdmx";
    int64_t pod_modes = 0;
    pod->add_option("--snapshots", pod_snapshots, "Snapshot matrix file")->required();
    pod->add_option("--modes", pod_modes, "Number of basis vectors")->required();
    pod->add_option("--out", pod_out, "Output basis file")->capture_default_str();

    // -------------------------------------------------------------- sensors
    auto* sensors = app.add_subcommand("sensors", "Select sensor locations by CPQR");
    std::string sensors_phi;
    std::string sensors_mask;
    std::string sensors_out = "sensors.txt";
    int64_t sensors_count = 0;
    sensors->add_option("--phi", sensors_phi, "Basis matrix file")->required();
    sensors->add_option("--count", sensors_count, "Number of sensors")->required();
    sensors->add_option("--mask", sensors_mask,
                        "Accessibility mask (N x 1 matrix, nonzero = accessible)");
    sensors->add_option("--out", sensors_out, "Output index list")->capture_default_str();

    // ---------------------------------------------------------- reconstruct
    auto* recon = app.add_subcommand("reconstruct", "Reconstruct a field from observations");
    std::string recon_phi;
    std::string recon_sensors;
    std::string recon_y;
    std::string recon_method = "cdeim";
    std::vector<double> recon_bounds;
    std::string recon_alpha_out = "alpha.cdmx";
    std::string recon_field_out = "reconstruction.cdmx";
    std::string recon_record_out = "outcome.txt";
    cdeim_solver_params recon_params;
    cdeim_solver_params_init(&recon_params);
    recon->add_option("--phi", recon_phi, "Basis matrix file")->required();
    recon->add_option("--sensors", recon_sensors, "Sensor index list")->required();
    recon->add_option("--y", recon_y, "Observation vector file (r x 1)")->required();
    recon->add_option("--bounds", recon_bounds, "Lower and upper bound")
        ->expected(2)
        ->required();
    recon->add_option("--method", recon_method, "deim or cdeim")
        ->check(CLI::IsMember({"deim", "cdeim"}))
        ->capture_default_str();
    recon->add_option("--out-alpha", recon_alpha_out, "Coefficient output")
        ->capture_default_str();
    recon->add_option("--out-recon", recon_field_out, "Reconstruction output")
        ->capture_default_str();
    recon->add_option("--out-record", recon_record_out, "Outcome record output")
        ->capture_default_str();
    add_solver_flags(recon, &recon_params);

    // ------------------------------------------------------------ harmonics
    auto* harmonics = app.add_subcommand("harmonics", "Random-harmonics benchmark experiment");
    cdeim_harmonics_config harmonics_config;
    cdeim_harmonics_config_init(&harmonics_config);
    cdeim_solver_params harmonics_params;
    cdeim_solver_params_init(&harmonics_params);
    std::vector<int64_t> harmonics_r = {5, 10, 15, 20, 25, 30, 35};
    bool harmonics_generate_only = false;
    bool harmonics_amp_stddev = false;
    harmonics->add_option("--seed", harmonics_config.seed, "Ensemble seed");
    harmonics->add_option("--r", harmonics_r, "Sensor counts")
        ->delimiter(',')
        ->capture_default_str();
    harmonics->add_option("--functions", harmonics_config.n_functions, "Ensemble size");
    harmonics->add_option("--train", harmonics_config.n_train, "Training split size");
    harmonics->add_option("--grid", harmonics_config.grid_points, "Grid points");
    harmonics->add_option("--terms", harmonics_config.n_terms, "Cosine terms per function");
    harmonics->add_option("--eta", harmonics_config.eta, "Inaccessible boundary margin");
    harmonics->add_flag("--amp-stddev", harmonics_amp_stddev,
                        "Read the 1/k amplitude parameter as a standard deviation");
    harmonics->add_flag("--generate-only", harmonics_generate_only,
                        "Write the train/test matrices and stop");
    add_solver_flags(harmonics, &harmonics_params);

    // ------------------------------------------------------------- fire-sim
    auto* fire_sim = app.add_subcommand("fire-sim", "Generate a wildfire ensemble");
    cdeim_fire_config fire_config;
    cdeim_fire_config_init(&fire_config);
    fire_sim->add_option("--seed", fire_config.seed, "Ensemble seed");
    fire_sim->add_option("--sims", fire_config.n_sims, "Number of simulations");
    fire_sim->add_option("--train", fire_config.n_train, "Training split size");
    fire_sim->add_option("--domain-x", fire_config.domain_x, "Domain width (m)");
    fire_sim->add_option("--domain-y", fire_config.domain_y, "Domain height (m)");
    fire_sim->add_option("--cell", fire_config.cell_length, "Cell side length (m)");
    fire_sim->add_option("--ignite-x", fire_config.ignition_x, "Ignition x (m)");
    fire_sim->add_option("--ignite-y", fire_config.ignition_y, "Ignition y (m)");
    fire_sim->add_option("--wind", fire_config.base_wind, "Base wind speed (m/s)");
    fire_sim->add_option("--eps", fire_config.perturbation, "Wind perturbation amplitude");
    fire_sim->add_option("--freq", fire_config.frequency, "Wind spatial frequency");
    fire_sim->add_option("--sim-time", fire_config.sim_time, "Seconds per simulation leg");

    // ----------------------------------------------------------- fire-recon
    auto* fire_recon = app.add_subcommand("fire-recon", "Reconstruct wildfire test states");
    std::string fire_recon_sim_dir;
    std::string fire_recon_scenario = "lines";
    std::vector<int64_t> fire_recon_r = {70};
    cdeim_solver_params fire_recon_params;
    cdeim_solver_params_init(&fire_recon_params);
    fire_recon_params.lambda_init = 1e-6;
    fire_recon->add_option("--sim-dir", fire_recon_sim_dir, "Ensemble directory")->required();
    fire_recon->add_option("--scenario", fire_recon_scenario, "lines or random")
        ->check(CLI::IsMember({"lines", "random"}))
        ->capture_default_str();
    fire_recon->add_option("--r", fire_recon_r, "Sensor counts")
        ->delimiter(',')
        ->capture_default_str();
    add_solver_flags(fire_recon, &fire_recon_params);

    // -------------------------------------------------------- fire-forecast
    auto* fire_forecast =
        app.add_subcommand("fire-forecast", "Two-hour forecasts from reconstructions");
    std::string forecast_sim_dir;
    std::string forecast_recon_dir;
    int64_t forecast_r = 70;
    fire_forecast->add_option("--sim-dir", forecast_sim_dir, "Ensemble directory")->required();
    fire_forecast->add_option("--recon-dir", forecast_recon_dir, "Reconstruction directory")
        ->required();
    fire_forecast->add_option("--r", forecast_r, "Sensor count of the stored reconstructions")
        ->capture_default_str();

    // ---------------------------------------------------------------- report
    auto* report = app.add_subcommand("report", "Aggregate per-case records into a summary");
    std::string report_records;
    std::string report_out = "summary.csv";
    report->add_option("--records", report_records, "Per-case records CSV")->required();
    report->add_option("--out", report_out, "Summary CSV output")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        std::cerr << "cdeim: error [usage] " << e.what() << '\n';
        return kExitUsage;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const auto in_out_dir = [&](const std::string& name) {
        return fs::path(name).is_absolute() ? name : (fs::path(out_dir) / name).string();
    };

    if (pod->parsed()) {
        RunManifest manifest("pod", out_dir);
        MatrixHandle snapshots;
        check(cdeim_matrix_read(pod_snapshots.c_str(), &snapshots.m));
        MatrixHandle phi;
        check(cdeim_pod_basis(snapshots.m, pod_modes, &phi.m));
        const std::string out_path = in_out_dir(pod_out);
        check(cdeim_matrix_write(phi.m, out_path.c_str()));
        manifest.add({{"snapshots", pod_snapshots},
                      {"modes", std::to_string(pod_modes)},
                      {"out", out_path}});
        manifest.write();
        std::cout << "wrote " << out_path << " (" << cdeim_matrix_rows(phi.m) << " x "
                  << cdeim_matrix_cols(phi.m) << ")\n";
        return 0;
    }

    if (sensors->parsed()) {
        RunManifest manifest("sensors", out_dir);
        MatrixHandle phi;
        check(cdeim_matrix_read(sensors_phi.c_str(), &phi.m));
        std::vector<int64_t> indices(static_cast<size_t>(sensors_count));
        int rank_warning = 0;
        if (sensors_mask.empty()) {
            check(cdeim_cpqr_select(phi.m, sensors_count, indices.data()));
        } else {
            MatrixHandle mask;
            check(cdeim_matrix_read(sensors_mask.c_str(), &mask.m));
            if (cdeim_matrix_rows(mask.m) != cdeim_matrix_rows(phi.m) ||
                cdeim_matrix_cols(mask.m) != 1) {
                std::cerr << "cdeim: error [invalid_argument] mask must be N x 1\n";
                return kExitValidation;
            }
            std::vector<uint8_t> accessible(static_cast<size_t>(cdeim_matrix_rows(mask.m)));
            const double* data = cdeim_matrix_data(mask.m);
            for (size_t i = 0; i < accessible.size(); ++i) {
                accessible[i] = data[i] != 0.0 ? 1 : 0;
            }
            check(cdeim_restricted_cpqr_select(phi.m, accessible.data(), sensors_count,
                                               indices.data(), &rank_warning));
        }
        if (rank_warning != 0) {
            std::cerr << "cdeim: warning: masked basis is rank-deficient; sampled basis "
                         "will not have full rank\n";
        }
        BundleHandle bundle;
        check(cdeim_bundle_create(phi.m, indices.data(), sensors_count, &bundle.b));
        const std::string out_path = in_out_dir(sensors_out);
        write_sensor_file(indices, out_path);
        manifest.add({{"phi", sensors_phi},
                      {"count", std::to_string(sensors_count)},
                      {"mask", sensors_mask.empty() ? "none" : sensors_mask},
                      {"sigma_min", format_g17(cdeim_bundle_sigma_min(bundle.b))},
                      {"out", out_path}});
        manifest.write();
        std::cout << "wrote " << out_path << " (sigma_min(theta) = "
                  << format_g17(cdeim_bundle_sigma_min(bundle.b)) << ")\n";
        return 0;
    }

    if (recon->parsed()) {
        RunManifest manifest("reconstruct", out_dir);
        MatrixHandle phi;
        check(cdeim_matrix_read(recon_phi.c_str(), &phi.m));
        const std::vector<int64_t> indices = read_sensor_file(recon_sensors);
        BundleHandle bundle;
        check(cdeim_bundle_create(phi.m, indices.data(),
                                  static_cast<int64_t>(indices.size()), &bundle.b));
        MatrixHandle y;
        check(cdeim_matrix_read(recon_y.c_str(), &y.m));
        if (cdeim_matrix_cols(y.m) != 1 ||
            cdeim_matrix_rows(y.m) != static_cast<int64_t>(indices.size())) {
            std::cerr << "cdeim: error [invalid_argument] observations must be r x 1 with r = "
                      << indices.size() << '\n';
            return kExitValidation;
        }

        const int64_t m = cdeim_bundle_num_modes(bundle.b);
        const int64_t n = cdeim_bundle_grid_size(bundle.b);
        MatrixHandle alpha;
        check(cdeim_matrix_create(m, 1, nullptr, &alpha.m));
        MatrixHandle field;
        check(cdeim_matrix_create(n, 1, nullptr, &field.m));
        cdeim_solve_stats stats{};

        if (recon_method == "deim") {
            check(cdeim_deim_solve(bundle.b, cdeim_matrix_data(y.m),
                                   static_cast<int64_t>(indices.size()),
                                   cdeim_matrix_data_mut(alpha.m)));
            // reconstruction = phi * alpha
            const double* phi_data = cdeim_matrix_data(phi.m);
            const double* a = cdeim_matrix_data(alpha.m);
            double* u = cdeim_matrix_data_mut(field.m);
            for (int64_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int64_t j = 0; j < m; ++j) {
                    acc += phi_data[i + j * n] * a[j];
                }
                u[i] = acc;
            }
        } else {
            check(cdeim_constrained_solve(bundle.b, cdeim_matrix_data(y.m),
                                          static_cast<int64_t>(indices.size()), recon_bounds[0],
                                          recon_bounds[1], &recon_params,
                                          cdeim_matrix_data_mut(alpha.m),
                                          cdeim_matrix_data_mut(field.m), &stats));
        }

        const std::string alpha_path = in_out_dir(recon_alpha_out);
        const std::string field_path = in_out_dir(recon_field_out);
        const std::string record_path = in_out_dir(recon_record_out);
        check(cdeim_matrix_write(alpha.m, alpha_path.c_str()));
        check(cdeim_matrix_write(field.m, field_path.c_str()));
        KeyValues record = {{"method", recon_method},
                            {"u_min", format_g17(recon_bounds[0])},
                            {"u_max", format_g17(recon_bounds[1])},
                            {"sigma_min", format_g17(cdeim_bundle_sigma_min(bundle.b))}};
        if (recon_method == "cdeim") {
            record.push_back({"lambda_opt", format_g17(stats.lambda_opt)});
            record.push_back({"penalty_value", format_g17(stats.penalty_value)});
            record.push_back({"obs_residual", format_g17(stats.obs_residual)});
            record.push_back({"residual_bound", format_g17(stats.residual_bound)});
            record.push_back({"bound_violation_max", format_g17(stats.bound_violation_max)});
            record.push_back({"newton_iterations", std::to_string(stats.newton_iterations)});
            record.push_back({"bisection_steps", std::to_string(stats.bisection_steps)});
        }
        write_text_record(record_path, record);
        manifest.add({{"phi", recon_phi},
                      {"sensors", recon_sensors},
                      {"y", recon_y},
                      {"method", recon_method},
                      {"u_min", format_g17(recon_bounds[0])},
                      {"u_max", format_g17(recon_bounds[1])}});
        manifest.add(solver_entries(recon_params));
        manifest.write();
        std::cout << "wrote " << alpha_path << ", " << field_path << ", " << record_path << '\n';
        return 0;
    }

    if (harmonics->parsed()) {
        RunManifest manifest("harmonics", out_dir);
        harmonics_config.amplitude_inv_k_is_stddev = harmonics_amp_stddev ? 1 : 0;
        manifest.add({{"seed", std::to_string(harmonics_config.seed)},
                      {"functions", std::to_string(harmonics_config.n_functions)},
                      {"train", std::to_string(harmonics_config.n_train)},
                      {"grid", std::to_string(harmonics_config.grid_points)},
                      {"terms", std::to_string(harmonics_config.n_terms)},
                      {"eta", format_g17(harmonics_config.eta)},
                      {"amp_stddev", harmonics_amp_stddev ? "1" : "0"},
                      {"threads", std::to_string(threads)}});
        if (harmonics_generate_only) {
            check(cdeim_generate_harmonics(&harmonics_config, out_dir.c_str()));
            manifest.write();
            std::cout << "wrote " << out_dir << "/train.cdmx and test.cdmx\n";
            return 0;
        }
        std::ostringstream r_list;
        for (size_t i = 0; i < harmonics_r.size(); ++i) {
            r_list << (i > 0 ? "," : "") << harmonics_r[i];
        }
        manifest.add("r", r_list.str());
        manifest.add(solver_entries(harmonics_params));
        check(cdeim_run_harmonics(&harmonics_config, harmonics_r.data(),
                                  static_cast<int64_t>(harmonics_r.size()), &harmonics_params,
                                  out_dir.c_str(), threads));
        manifest.write();
        std::cout << "wrote " << out_dir << "/records.csv and summary.csv\n";
        return 0;
    }

    if (fire_sim->parsed()) {
        RunManifest manifest("fire-sim", out_dir);
        manifest.add({{"seed", std::to_string(fire_config.seed)},
                      {"sims", std::to_string(fire_config.n_sims)},
                      {"train", std::to_string(fire_config.n_train)},
                      {"threads", std::to_string(threads)}});
        check(cdeim_run_fire_sim(&fire_config, out_dir.c_str(), threads));
        manifest.write();
        std::cout << "wrote ensemble under " << out_dir << '\n';
        return 0;
    }

    if (fire_recon->parsed()) {
        RunManifest manifest("fire-recon", out_dir);
        const int scenario = fire_recon_scenario == "lines" ? CDEIM_FIRE_SCENARIO_LINES
                                                            : CDEIM_FIRE_SCENARIO_RANDOM;
        std::ostringstream r_list;
        for (size_t i = 0; i < fire_recon_r.size(); ++i) {
            r_list << (i > 0 ? "," : "") << fire_recon_r[i];
        }
        manifest.add({{"sim_dir", fire_recon_sim_dir},
                      {"scenario", fire_recon_scenario},
                      {"r", r_list.str()},
                      {"threads", std::to_string(threads)}});
        manifest.add(solver_entries(fire_recon_params));
        check(cdeim_run_fire_recon(fire_recon_sim_dir.c_str(), scenario, fire_recon_r.data(),
                                   static_cast<int64_t>(fire_recon_r.size()),
                                   &fire_recon_params, out_dir.c_str(), threads));
        manifest.write();
        std::cout << "wrote " << out_dir << "/records.csv and summary.csv\n";
        return 0;
    }

    if (fire_forecast->parsed()) {
        RunManifest manifest("fire-forecast", out_dir);
        manifest.add({{"sim_dir", forecast_sim_dir},
                      {"recon_dir", forecast_recon_dir},
                      {"r", std::to_string(forecast_r)},
                      {"threads", std::to_string(threads)}});
        check(cdeim_run_fire_forecast(forecast_sim_dir.c_str(), forecast_recon_dir.c_str(),
                                      forecast_r, out_dir.c_str(), threads));
        manifest.write();
        std::cout << "wrote " << out_dir << "/forecast_records.csv and forecast_summary.csv\n";
        return 0;
    }

    if (report->parsed()) {
        RunManifest manifest("report", out_dir);
        const std::string out_path = in_out_dir(report_out);
        check(cdeim_aggregate_records(report_records.c_str(), out_path.c_str()));
        manifest.add({{"records", report_records}, {"out", out_path}});
        manifest.write();
        std::cout << "wrote " << out_path << '\n';
        return 0;
    }

    return kExitUsage;
}
