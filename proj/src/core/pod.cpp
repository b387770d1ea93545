#include "core/pod.hpp"

#include "core/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace cdeim {

void fix_column_signs(Matrix& basis) {
    for (Index j = 0; j < basis.cols(); ++j) {
        Index imax = 0;
        basis.col(j).cwiseAbs().maxCoeff(&imax);
        if (basis(imax, j) < 0.0) {
            basis.col(j) = -basis.col(j);
        }
    }
}

Matrix compute_pod_basis(const Matrix& snapshots, Index m) {
    if (snapshots.rows() < 1 || snapshots.cols() < 1) {
        throw validation_error("compute_pod_basis: snapshot matrix is empty");
    }
    if (!snapshots.allFinite()) {
        throw validation_error("compute_pod_basis: snapshot matrix has non-finite entries");
    }
    if (m < 1 || m > std::min(snapshots.rows(), snapshots.cols())) {
        throw validation_error("compute_pod_basis: m must lie in [1, min(N, n_s)], got m=" +
                               std::to_string(m));
    }

    Eigen::BDCSVD<Matrix> svd(snapshots, Eigen::ComputeThinU);
    const Vector& sigma = svd.singularValues();
    const double cutoff = kPodRankTolerance * sigma(0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) {
        ++rank;
    }
    if (m > rank) {
        throw validation_error("compute_pod_basis: requested m=" + std::to_string(m) +
                               " modes but numerical rank is " + std::to_string(rank));
    }

    Matrix phi = svd.matrixU().leftCols(m);
    fix_column_signs(phi);
    return phi;
}

}  // namespace cdeim
