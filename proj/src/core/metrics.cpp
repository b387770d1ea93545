#include "core/metrics.hpp"

#include "core/errors.hpp"

#include <cmath>

namespace cdeim {

double relative_l2(const Vector& u_true, const Vector& u_rec) {
    if (u_true.size() != u_rec.size()) {
        throw validation_error("relative_l2: vector lengths differ");
    }
    const double denom = u_true.norm();
    if (denom == 0.0) {
        throw validation_error("relative_l2: reference vector has zero norm");
    }
    return (u_rec - u_true).norm() / denom;
}

double relative_obs_residual(const Matrix& theta, const Vector& alpha, const Vector& y) {
    if (theta.cols() != alpha.size() || theta.rows() != y.size()) {
        throw validation_error("relative_obs_residual: dimension mismatch");
    }
    const double denom = y.norm();
    if (denom == 0.0) {
        throw validation_error("relative_obs_residual: observations have zero norm");
    }
    return (theta * alpha - y).norm() / denom;
}

EnsembleStats ensemble_stats(const std::vector<double>& values) {
    if (values.empty()) {
        throw validation_error("ensemble_stats: empty sample");
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    if (values.size() == 1) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, 1.96 * sd / std::sqrt(n)};
}

}  // namespace cdeim
