#pragma once

#include "core/records.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cdeim {

/// Random-harmonics benchmark: ensembles of normalized cosine sums
///   g_j(x) = sum_{k=1..n_terms} a_kj cos(k x + phi_kj),  u_j = g_j / max|g_j|
/// sampled on an equispaced grid over [0, 2*pi] (endpoints included), with
/// sensor placement restricted to [eta, 2*pi - eta].
struct HarmonicsConfig {
    Index n_functions = 1000;
    Index n_train = 800;
    Index grid_points = 1000;
    Index n_terms = 20;
    double eta = 0.1 * 3.14159265358979323846;
    std::uint64_t seed = 0;

    /// Amplitudes a_kj are N(0, 1/k) with 1/k read as the variance; set to
    /// true to read it as the standard deviation instead.
    bool amplitude_inv_k_is_stddev = false;

    void validate() const;
};

struct HarmonicsData {
    Matrix train;  // grid_points x n_train
    Matrix test;   // grid_points x (n_functions - n_train)
};

/// Equispaced grid including both endpoints.
Vector harmonics_grid(const HarmonicsConfig& config);

/// True where the grid point lies in the accessible band [eta, 2*pi - eta].
AccessMask harmonics_access_mask(const HarmonicsConfig& config);

/// Deterministic generation: function j draws from substream j, amplitude
/// then phase for k = 1..n_terms. Every column has max |entry| == 1.
HarmonicsData generate_harmonics(const HarmonicsConfig& config);

struct HarmonicsResult {
    std::vector<CaseRecord> records;
    std::vector<SummaryRow> summary;
    double max_bound_violation = 0.0;  // over all constrained reconstructions
    Index relaxed_bound_violations = 0;  // entries beyond [-1-(6d)^(1/3), 1+(6d)^(1/3)]
};

/// Full restricted-sensor experiment: POD from the training split (m = r),
/// restricted CPQR placement, then DEIM and constrained reconstructions of
/// every test column at each sensor count. Infeasible solves are recorded
/// per case and excluded from the aggregates.
HarmonicsResult run_harmonics_experiment(const HarmonicsConfig& config,
                                         const std::vector<Index>& sensor_counts,
                                         const PenaltyParams& params, Index threads = 0);

/// Experiment plus file outputs: train/test matrices, per-case records and
/// the summary table under out_dir.
HarmonicsResult run_harmonics_to_dir(const HarmonicsConfig& config,
                                     const std::vector<Index>& sensor_counts,
                                     const PenaltyParams& params, const std::string& out_dir,
                                     Index threads = 0);

}  // namespace cdeim
