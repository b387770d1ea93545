// End-to-end checks of the command line tool: each case shells out to the
// built binary and inspects exit codes and produced files.

#include "cdeim/cdeim.h"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = CDEIM_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "cdeim_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const std::string& log_name = "cli.log") {
    const std::string log = (work_dir() / log_name).string();
    const std::string command = kCli + " " + args + " >" + log + " 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A tiny bounded snapshot set written through the C API for fixtures.
void write_snapshots(const std::string& path) {
    std::array<double, 12> data{};
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 4; ++i) {
            data[static_cast<size_t>(j * 4 + i)] =
                0.9 * std::cos(0.7 * (i + 1) * (j + 1)) / (j + 1);
        }
    }
    cdeim_matrix* m = nullptr;
    REQUIRE(cdeim_matrix_create(4, 3, data.data(), &m) == CDEIM_OK);
    REQUIRE(cdeim_matrix_write(m, path.c_str()) == CDEIM_OK);
    cdeim_matrix_destroy(m);
}

}  // namespace

TEST_CASE("cli: help and version run clean") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("--version") == 0);
}

TEST_CASE("cli: unknown flags exit with the usage code") {
    CHECK(run_cli("--definitely-not-a-flag") == 64);
    CHECK(run_cli("pod --no-such-option x") == 64);
}

TEST_CASE("cli: missing input file exits with the io code and names the path") {
    const fs::path dir = work_dir() / "missing";
    fs::create_directories(dir);
    const int code = run_cli("--out-dir " + dir.string() +
                                 " pod --snapshots /nonexistent/snaps.cdmx --modes 2",
                             "missing.log");
    CHECK(code == 66);
    const std::string log = slurp(work_dir() / "missing.log");
    CHECK(log.find("/nonexistent/snaps.cdmx") != std::string::npos);
    CHECK(log.find("[io]") != std::string::npos);
}

TEST_CASE("cli: pod, sensors and reconstruct pipeline") {
    const fs::path dir = work_dir() / "pipeline";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string snaps = (dir / "snaps.cdmx").string();
    write_snapshots(snaps);

    CHECK(run_cli("--out-dir " + dir.string() + " pod --snapshots " + snaps +
                  " --modes 2 --out phi.cdmx") == 0);
    CHECK(fs::exists(dir / "phi.cdmx"));

    CHECK(run_cli("--out-dir " + dir.string() + " sensors --phi " +
                  (dir / "phi.cdmx").string() + " --count 2 --out s.txt") == 0);
    CHECK(fs::exists(dir / "s.txt"));

    // Observations: sample the first snapshot at the chosen sensors.
    cdeim_matrix* snapshots = nullptr;
    REQUIRE(cdeim_matrix_read(snaps.c_str(), &snapshots) == CDEIM_OK);
    std::ifstream sensor_file(dir / "s.txt");
    std::array<double, 2> y{};
    std::string line;
    for (int k = 0; std::getline(sensor_file, line) && k < 2; ++k) {
        y[static_cast<size_t>(k)] = cdeim_matrix_data(snapshots)[std::stoll(line)];
    }
    cdeim_matrix_destroy(snapshots);
    cdeim_matrix* y_matrix = nullptr;
    REQUIRE(cdeim_matrix_create(2, 1, y.data(), &y_matrix) == CDEIM_OK);
    REQUIRE(cdeim_matrix_write(y_matrix, (dir / "y.cdmx").string().c_str()) == CDEIM_OK);
    cdeim_matrix_destroy(y_matrix);

    CHECK(run_cli("--out-dir " + dir.string() + " reconstruct --phi " +
                  (dir / "phi.cdmx").string() + " --sensors " + (dir / "s.txt").string() +
                  " --y " + (dir / "y.cdmx").string() + " --bounds -1 1") == 0);
    CHECK(fs::exists(dir / "alpha.cdmx"));
    CHECK(fs::exists(dir / "reconstruction.cdmx"));
    const std::string record = slurp(dir / "outcome.txt");
    CHECK(record.find("lambda_opt") != std::string::npos);
    CHECK(record.find("penalty_value") != std::string::npos);
    CHECK(record.find("obs_residual") != std::string::npos);
    CHECK(fs::exists(dir / "reconstruct_manifest.txt"));
}

TEST_CASE("cli: harmonics experiment emits one summary row per (r, method)") {
    const fs::path dir = work_dir() / "harmonics";
    fs::remove_all(dir);
    CHECK(run_cli("--out-dir " + dir.string() + " --threads 2 harmonics --seed 42 --r 3,5 "
                  "--functions 24 --train 18 --grid 90") == 0);
    const std::string summary = slurp(dir / "summary.csv");
    std::stringstream ss(summary);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "r,method,mean_error,ci95,mean_residual,ci95,n_cases,n_infeasible");
    int rows = 0;
    while (std::getline(ss, line)) {
        if (!line.empty()) {
            ++rows;
        }
    }
    CHECK(rows == 4);
    CHECK(fs::exists(dir / "harmonics_manifest.txt"));
    const std::string manifest = slurp(dir / "harmonics_manifest.txt");
    CHECK(manifest.find("seed = 42") != std::string::npos);
    CHECK(manifest.find("wall_time_s = ") != std::string::npos);
}

TEST_CASE("cli: report aggregates a records file") {
    const fs::path dir = work_dir() / "report";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream records(dir / "records.csv");
        records << "case,r,method,rel_l2,rel_obs_residual,lambda_opt,bound_violation,"
                   "feasible,error\n";
        records << "0,5,deim,0.5,0,0,0,1,\n";
        records << "1,5,deim,0.7,0,0,0,1,\n";
    }
    CHECK(run_cli("--out-dir " + dir.string() + " report --records " +
                  (dir / "records.csv").string() + " --out agg.csv") == 0);
    const std::string summary = slurp(dir / "agg.csv");
    CHECK(summary.find("5,deim,0.59999999999999998") != std::string::npos);
}

TEST_CASE("cli: config file supplies defaults that flags override") {
    const fs::path dir = work_dir() / "config";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string snaps = (dir / "snaps.cdmx").string();
    write_snapshots(snaps);
    {
        std::ofstream config(dir / "run.cfg");
        config << "out-dir = " << dir.string() << "\n";
        config << "[pod]\n";
        config << "snapshots = " << snaps << "\n";
        config << "modes = 1\n";
    }
    CHECK(run_cli("--config " + (dir / "run.cfg").string() + " pod --modes 2") == 0);
    cdeim_matrix* phi = nullptr;
    REQUIRE(cdeim_matrix_read((dir / "phi.cdmx").string().c_str(), &phi) == CDEIM_OK);
    CHECK(cdeim_matrix_cols(phi) == 2);  // the flag beat the config file
    cdeim_matrix_destroy(phi);
}

TEST_CASE("cli: infeasible reconstruction exits with the solver code") {
    const fs::path dir = work_dir() / "infeasible";
    fs::remove_all(dir);
    fs::create_directories(dir);
    // Basis e1 on two grid points: the second entry is always 0, so bounds
    // [0.5, 1] cannot be met.
    const std::array<double, 2> basis = {1.0, 0.0};
    cdeim_matrix* phi = nullptr;
    REQUIRE(cdeim_matrix_create(2, 1, basis.data(), &phi) == CDEIM_OK);
    REQUIRE(cdeim_matrix_write(phi, (dir / "phi.cdmx").string().c_str()) == CDEIM_OK);
    cdeim_matrix_destroy(phi);
    {
        std::ofstream sensors(dir / "s.txt");
        sensors << "0\n";
    }
    const std::array<double, 1> y = {0.9};
    cdeim_matrix* y_matrix = nullptr;
    REQUIRE(cdeim_matrix_create(1, 1, y.data(), &y_matrix) == CDEIM_OK);
    REQUIRE(cdeim_matrix_write(y_matrix, (dir / "y.cdmx").string().c_str()) == CDEIM_OK);
    cdeim_matrix_destroy(y_matrix);

    const int code = run_cli("--out-dir " + dir.string() + " reconstruct --phi " +
                                 (dir / "phi.cdmx").string() + " --sensors " +
                                 (dir / "s.txt").string() + " --y " + (dir / "y.cdmx").string() +
                                 " --bounds 0.5 1 --lambda-cap 1e6",
                             "infeasible.log");
    CHECK(code == 69);
    CHECK(slurp(work_dir() / "infeasible.log").find("[infeasible]") != std::string::npos);
}
