#pragma once

#include "core/types.hpp"

namespace cdeim {

/// Relative singular-value cutoff for the numerical rank of the sampled
/// basis; also the pseudo-inverse truncation threshold.
inline constexpr double kThetaRankTolerance = 1e-12;

/// Orthonormal basis plus the sensor rows sampled from it. The sampled basis
/// theta stores phi's rows at sensor_indices; its SVD is cached because the
/// solver needs the pseudo-inverse and the smallest singular value on every
/// solve.
struct BasisBundle {
    Matrix phi;                // N x m
    IndexList sensor_indices;  // r distinct grid indices
    Matrix theta;              // r x m, theta.row(k) == phi.row(sensor_indices[k])

    Matrix theta_gram;  // theta^T theta, m x m
    Matrix theta_u;     // thin SVD factors of theta
    Matrix theta_v;
    Vector theta_sigma;  // singular values, descending
    Index theta_rank;    // count of singular values above the relative cutoff

    Index grid_size() const { return phi.rows(); }
    Index num_modes() const { return phi.cols(); }
    Index num_sensors() const { return static_cast<Index>(sensor_indices.size()); }

    /// Smallest nonzero singular value of theta.
    double sigma_min() const { return theta_sigma(theta_rank - 1); }
    bool full_rank() const {
        return theta_rank == std::min(theta.rows(), theta.cols());
    }
};

/// First r pivot indices of the column-pivoted QR factorization of phi^T,
/// computed with Householder reflectors and classical pivoting: each step
/// selects the column of largest residual norm after the previous pivots
/// have been projected out (ties go to the lowest index).
///
/// Requires 1 <= r <= min(N, m); the pivot order is undefined past m.
IndexList cpqr_select(const Matrix& phi, Index r);

/// cpqr_select applied after zeroing phi's rows at inaccessible grid points,
/// which demotes them in the pivot ordering; every returned index is
/// accessible. The zeroed matrix is not guaranteed full rank; when the
/// residual norm hits zero before r pivots are found, *rank_warning (if
/// given) is set and the remaining sensors are filled with the lowest
/// untouched accessible indices.
IndexList restricted_cpqr_select(const Matrix& phi, const AccessMask& accessible, Index r,
                                 bool* rank_warning = nullptr);

/// Bundle phi with a sensor set: copies the sampled rows and caches the SVD
/// of theta. Throws on duplicate or out-of-range indices.
BasisBundle assemble_bundle(const Matrix& phi, const IndexList& sensor_indices);

}  // namespace cdeim
