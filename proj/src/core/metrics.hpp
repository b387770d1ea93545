#pragma once

#include "core/types.hpp"

namespace cdeim {

/// |u_rec - u_true| / |u_true|. Throws when the truth has zero norm.
double relative_l2(const Vector& u_true, const Vector& u_rec);

/// |theta*alpha - y| / |y|. Throws when the observations have zero norm.
double relative_obs_residual(const Matrix& theta, const Vector& alpha, const Vector& y);

struct EnsembleStats {
    double mean;
    double ci95_halfwidth;  // 1.96 * sd / sqrt(n), sample sd; 0 for n == 1
};

/// Mean and normal-approximation 95% confidence half-width of a nonempty
/// sample.
EnsembleStats ensemble_stats(const std::vector<double>& values);

}  // namespace cdeim
