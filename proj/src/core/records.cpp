#include "core/records.hpp"

#include "core/errors.hpp"
#include "core/matrix_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cdeim {

std::vector<SummaryRow> aggregate_records(const std::vector<CaseRecord>& records) {
    // Group by (r, method) preserving first-appearance order of methods
    // within ascending r.
    std::map<std::pair<Index, std::string>, std::vector<const CaseRecord*>> groups;
    for (const CaseRecord& rec : records) {
        groups[{rec.r, rec.method}].push_back(&rec);
    }

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.r = key.first;
        row.method = key.second;
        std::vector<double> errors;
        std::vector<double> residuals;
        for (const CaseRecord* rec : group) {
            if (!rec->feasible) {
                ++row.n_infeasible;
                continue;
            }
            errors.push_back(rec->rel_l2);
            residuals.push_back(rec->rel_obs_residual);
            ++row.n_cases;
        }
        if (!errors.empty()) {
            const EnsembleStats e = ensemble_stats(errors);
            const EnsembleStats o = ensemble_stats(residuals);
            row.mean_error = e.mean;
            row.error_ci95 = e.ci95_halfwidth;
            row.mean_residual = o.mean;
            row.residual_ci95 = o.ci95_halfwidth;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_case_records_csv(const std::vector<CaseRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    out << "case,r,method,rel_l2,rel_obs_residual,lambda_opt,bound_violation,feasible,error\n";
    for (const CaseRecord& rec : records) {
        out << rec.case_index << ',' << rec.r << ',' << rec.method << ','
            << format_double(rec.rel_l2) << ',' << format_double(rec.rel_obs_residual) << ','
            << format_double(rec.lambda_opt) << ',' << format_double(rec.bound_violation) << ','
            << (rec.feasible ? 1 : 0) << ',' << rec.error << '\n';
    }
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

std::vector<CaseRecord> read_case_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error(path + ": cannot open for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw io_error(path + ": empty records file");
    }
    if (line.rfind("case,r,method", 0) != 0) {
        throw io_error(path + ": unrecognized records header");
    }
    std::vector<CaseRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() < 8) {
            throw io_error(path + ": malformed record line '" + line + "'");
        }
        try {
            CaseRecord rec;
            rec.case_index = std::stoll(cells[0]);
            rec.r = std::stoll(cells[1]);
            rec.method = cells[2];
            rec.rel_l2 = std::stod(cells[3]);
            rec.rel_obs_residual = std::stod(cells[4]);
            rec.lambda_opt = std::stod(cells[5]);
            rec.bound_violation = std::stod(cells[6]);
            rec.feasible = cells[7] != "0";
            rec.error = cells.size() > 8 ? cells[8] : "";
            records.push_back(std::move(rec));
        } catch (const std::exception&) {
            throw io_error(path + ": malformed record line '" + line + "'");
        }
    }
    return records;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    out << "r,method,mean_error,ci95,mean_residual,ci95,n_cases,n_infeasible\n";
    for (const SummaryRow& row : rows) {
        out << row.r << ',' << row.method << ',' << format_double(row.mean_error) << ','
            << format_double(row.error_ci95) << ',' << format_double(row.mean_residual) << ','
            << format_double(row.residual_ci95) << ',' << row.n_cases << ','
            << row.n_infeasible << '\n';
    }
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

std::vector<std::pair<std::string, std::string>> outcome_record(const SolveOutcome& outcome) {
    return {
        {"lambda_opt", format_double(outcome.lambda_opt)},
        {"penalty_value", format_double(outcome.penalty_value)},
        {"obs_residual", format_double(outcome.obs_residual)},
        {"residual_bound", format_double(outcome.residual_bound)},
        {"bound_violation_max", format_double(outcome.bound_violation_max)},
        {"newton_iterations", std::to_string(outcome.newton_iterations_total)},
        {"bisection_steps", std::to_string(outcome.bisection_steps)},
    };
}

}  // namespace cdeim
