#pragma once

#include "core/metrics.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

#include <string>
#include <vector>

namespace cdeim {

/// One reconstruction of one test case by one method.
struct CaseRecord {
    Index case_index = 0;
    Index r = 0;
    std::string method;  // "deim" or "cdeim"
    double rel_l2 = 0.0;
    double rel_obs_residual = 0.0;
    double lambda_opt = 0.0;
    double bound_violation = 0.0;
    bool feasible = true;
    std::string error;  // failure category when !feasible
};

/// One (r, method) aggregate over the feasible cases.
struct SummaryRow {
    Index r = 0;
    std::string method;
    double mean_error = 0.0;
    double error_ci95 = 0.0;
    double mean_residual = 0.0;
    double residual_ci95 = 0.0;
    Index n_cases = 0;
    Index n_infeasible = 0;
};

std::vector<SummaryRow> aggregate_records(const std::vector<CaseRecord>& records);

void write_case_records_csv(const std::vector<CaseRecord>& records, const std::string& path);
std::vector<CaseRecord> read_case_records_csv(const std::string& path);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

/// Key-value serialization of a solve outcome for the report pipeline.
std::vector<std::pair<std::string, std::string>> outcome_record(const SolveOutcome& outcome);

}  // namespace cdeim
