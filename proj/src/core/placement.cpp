#include "core/placement.hpp"

#include "core/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace cdeim {
namespace {

// Column-pivoted Householder QR on a working copy of phi^T. `accessible`
// limits the candidate columns (nullptr admits all). Residual column norms
// are recomputed from the reflected block every step, so the pivot rule is
// exactly max-residual-norm.
IndexList pivot_columns(Matrix w, Index r, const AccessMask* accessible, bool* rank_warning) {
    const Index m = w.rows();
    const Index n = w.cols();
    IndexList perm(n);
    for (Index j = 0; j < n; ++j) {
        perm[j] = j;
    }
    if (rank_warning != nullptr) {
        *rank_warning = false;
    }

    const auto is_candidate = [&](Index pos) {
        return accessible == nullptr || (*accessible)[static_cast<size_t>(perm[pos])] != 0;
    };

    IndexList pivots;
    pivots.reserve(static_cast<size_t>(r));
    for (Index k = 0; k < r; ++k) {
        const Index tail = m - k;

        // Pick the candidate column with the largest residual norm.
        Index best = -1;
        double best_norm = -1.0;
        for (Index pos = k; pos < n; ++pos) {
            if (!is_candidate(pos)) {
                continue;
            }
            const double nrm = w.col(pos).tail(tail).norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = pos;
            }
        }
        if (best < 0) {
            throw validation_error("cpqr: fewer accessible columns than requested pivots");
        }
        if (best_norm == 0.0) {
            // Masked basis ran out of rank; deterministically take the
            // lowest remaining accessible index so r sensors still come back.
            if (rank_warning != nullptr) {
                *rank_warning = true;
            }
            Index lowest = -1;
            for (Index pos = k; pos < n; ++pos) {
                if (is_candidate(pos) && (lowest < 0 || perm[pos] < perm[lowest])) {
                    lowest = pos;
                }
            }
            best = lowest;
        }

        w.col(k).swap(w.col(best));
        std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(best)]);
        pivots.push_back(perm[static_cast<size_t>(k)]);

        // Householder reflector annihilating rows k+1.. of the pivot column,
        // applied to the trailing columns.
        if (tail <= 1 || k + 1 >= n) {
            continue;
        }
        Vector x = w.col(k).tail(tail);
        const double xnorm = x.norm();
        if (xnorm == 0.0) {
            continue;
        }
        const double alpha = x(0) >= 0.0 ? -xnorm : xnorm;
        Vector v = x;
        v(0) -= alpha;
        const double vsq = v.squaredNorm();
        if (vsq == 0.0) {
            continue;
        }
        auto trailing = w.block(k, k + 1, tail, n - k - 1);
        trailing -= v * ((2.0 / vsq) * (v.transpose() * trailing));
        w(k, k) = alpha;
        w.col(k).tail(tail - 1).setZero();
    }
    return pivots;
}

}  // namespace

IndexList cpqr_select(const Matrix& phi, Index r) {
    const Index n = phi.rows();
    const Index m = phi.cols();
    if (r < 1 || r > n) {
        throw validation_error("cpqr_select: r must lie in [1, N], got r=" + std::to_string(r));
    }
    if (r > m) {
        throw validation_error("cpqr_select: r=" + std::to_string(r) + " exceeds the " +
                               std::to_string(m) + " basis columns; pivots past m are undefined");
    }
    return pivot_columns(phi.transpose(), r, nullptr, nullptr);
}

IndexList restricted_cpqr_select(const Matrix& phi, const AccessMask& accessible, Index r,
                                 bool* rank_warning) {
    const Index n = phi.rows();
    const Index m = phi.cols();
    if (static_cast<Index>(accessible.size()) != n) {
        throw validation_error("restricted_cpqr_select: mask length does not match grid size");
    }
    const Index n_accessible =
        static_cast<Index>(std::count_if(accessible.begin(), accessible.end(),
                                         [](std::uint8_t b) { return b != 0; }));
    if (r < 1 || r > n_accessible) {
        throw validation_error("restricted_cpqr_select: need r accessible grid points, have " +
                               std::to_string(n_accessible) + " for r=" + std::to_string(r));
    }
    if (r > m) {
        throw validation_error("restricted_cpqr_select: r=" + std::to_string(r) +
                               " exceeds the " + std::to_string(m) + " basis columns");
    }

    Matrix w = phi.transpose();
    for (Index j = 0; j < n; ++j) {
        if (accessible[static_cast<size_t>(j)] == 0) {
            w.col(j).setZero();
        }
    }
    return pivot_columns(std::move(w), r, &accessible, rank_warning);
}

BasisBundle assemble_bundle(const Matrix& phi, const IndexList& sensor_indices) {
    const Index n = phi.rows();
    const Index r = static_cast<Index>(sensor_indices.size());
    if (r < 1) {
        throw validation_error("assemble_bundle: empty sensor list");
    }
    std::unordered_set<Index> seen;
    for (Index idx : sensor_indices) {
        if (idx < 0 || idx >= n) {
            throw validation_error("assemble_bundle: sensor index " + std::to_string(idx) +
                                   " outside [0, " + std::to_string(n) + ")");
        }
        if (!seen.insert(idx).second) {
            throw validation_error("assemble_bundle: duplicate sensor index " +
                                   std::to_string(idx));
        }
    }

    BasisBundle bundle;
    bundle.phi = phi;
    bundle.sensor_indices = sensor_indices;
    bundle.theta.resize(r, phi.cols());
    for (Index k = 0; k < r; ++k) {
        bundle.theta.row(k) = phi.row(sensor_indices[static_cast<size_t>(k)]);
    }
    bundle.theta_gram = bundle.theta.transpose() * bundle.theta;

    Eigen::JacobiSVD<Matrix> svd(bundle.theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    bundle.theta_u = svd.matrixU();
    bundle.theta_v = svd.matrixV();
    bundle.theta_sigma = svd.singularValues();
    const double cutoff = kThetaRankTolerance * bundle.theta_sigma(0);
    Index rank = 0;
    while (rank < bundle.theta_sigma.size() && bundle.theta_sigma(rank) > cutoff) {
        ++rank;
    }
    if (rank == 0) {
        throw validation_error("assemble_bundle: sampled basis is numerically zero");
    }
    bundle.theta_rank = rank;
    return bundle;
}

}  // namespace cdeim
