#pragma once

#include "core/types.hpp"

namespace cdeim {

/// Relative singular-value threshold below which directions count as
/// numerically null when ranking POD modes.
inline constexpr double kPodRankTolerance = 1e-12;

/// Leading left singular vectors of a snapshot matrix (one snapshot per
/// column). Returns an N x m matrix with orthonormal columns ordered by
/// descending singular value. Each column is sign-fixed so that its entry of
/// largest magnitude is positive, making the basis reproducible across
/// platforms. Snapshots are used as-is (no mean subtraction).
///
/// Throws validation_error for non-finite input or m > min(N, n_s), and if m
/// exceeds the numerical rank (singular values <= 1e-12 * sigma_max count as
/// zero); the message reports the rank found.
Matrix compute_pod_basis(const Matrix& snapshots, Index m);

/// Flip each column so its largest-magnitude entry is positive (first such
/// entry wins ties). Shared by compute_pod_basis and tests.
void fix_column_signs(Matrix& basis);

}  // namespace cdeim
