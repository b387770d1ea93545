// Test-only reference implementations, kept independent of the library's
// solution paths: the POD check goes through an eigendecomposition of the
// Gram matrix (cyclic Jacobi, no Eigen SVD), the sensor-selection check
// through explicit Gram-Schmidt projections, and derivative checks through
// central finite differences.
#pragma once

#include "core/rng.hpp"
#include "core/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

using cdeim::Index;
using cdeim::Matrix;
using cdeim::Vector;

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns
// eigenvalues descending with matching eigenvector columns.
inline void jacobi_eigh(Matrix a, Vector& eigenvalues, Matrix& eigenvectors) {
    const Index n = a.rows();
    eigenvectors = Matrix::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) {
            break;
        }
        for (Index p = 0; p < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::JacobiRotation<double> rot(c, s);
                a.applyOnTheLeft(p, q, rot.transpose());
                a.applyOnTheRight(p, q, rot);
                eigenvectors.applyOnTheRight(p, q, rot);
            }
        }
    }
    eigenvalues.resize(n);
    for (Index i = 0; i < n; ++i) {
        eigenvalues(i) = a(i, i);
    }
    // Sort descending.
    std::vector<Index> order(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) {
        order[static_cast<size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](Index i, Index j) { return eigenvalues(i) > eigenvalues(j); });
    Vector sorted_vals(n);
    Matrix sorted_vecs(n, n);
    for (Index i = 0; i < n; ++i) {
        sorted_vals(i) = eigenvalues(order[static_cast<size_t>(i)]);
        sorted_vecs.col(i) = eigenvectors.col(order[static_cast<size_t>(i)]);
    }
    eigenvalues = sorted_vals;
    eigenvectors = sorted_vecs;
}

// Top-m left singular vectors of `snapshots` via the Gram matrix A^T A:
// eigenvectors v give u = A v / sigma.
inline Matrix pod_via_gram(const Matrix& snapshots, Index m) {
    const Matrix gram = snapshots.transpose() * snapshots;
    Vector eigenvalues;
    Matrix eigenvectors;
    jacobi_eigh(gram, eigenvalues, eigenvectors);
    Matrix basis(snapshots.rows(), m);
    for (Index j = 0; j < m; ++j) {
        const double sigma = std::sqrt(std::max(eigenvalues(j), 0.0));
        basis.col(j) = snapshots * eigenvectors.col(j) / sigma;
    }
    return basis;
}

// Greedy max-residual-norm sensor selection by explicit projection onto the
// span of already-chosen columns of w = phi^T (Gram-Schmidt, not
// Householder). Ties go to the lowest index. A null mask admits everything.
inline cdeim::IndexList greedy_cpqr(const Matrix& phi, Index r,
                                    const cdeim::AccessMask* mask = nullptr) {
    Matrix w = phi.transpose();
    if (mask != nullptr) {
        for (Index j = 0; j < w.cols(); ++j) {
            if ((*mask)[static_cast<size_t>(j)] == 0) {
                w.col(j).setZero();
            }
        }
    }
    std::vector<Vector> q;  // orthonormal directions of chosen columns
    cdeim::IndexList chosen;
    std::vector<bool> used(static_cast<size_t>(w.cols()), false);
    for (Index step = 0; step < r; ++step) {
        Index best = -1;
        double best_norm = -1.0;
        for (Index c = 0; c < w.cols(); ++c) {
            if (used[static_cast<size_t>(c)] ||
                (mask != nullptr && (*mask)[static_cast<size_t>(c)] == 0)) {
                continue;
            }
            Vector res = w.col(c);
            for (const Vector& dir : q) {
                res -= dir.dot(w.col(c)) * dir;
            }
            const double nrm = res.norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = c;
            }
        }
        chosen.push_back(best);
        used[static_cast<size_t>(best)] = true;
        Vector res = w.col(best);
        for (const Vector& dir : q) {
            res -= dir.dot(w.col(best)) * dir;
        }
        if (res.norm() > 0.0) {
            q.push_back(res / res.norm());
        }
    }
    return chosen;
}

// Central finite-difference gradient with per-coordinate steps
// h_i = base * (1 + |x_i|).
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                          double base = 1e-6) {
    Vector grad(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        const double h = base * (1.0 + std::abs(x(i)));
        Vector xp = x;
        Vector xm = x;
        xp(i) += h;
        xm(i) -= h;
        grad(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return grad;
}

// Central finite differences of an analytic gradient, column j = d grad / dx_j.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& grad, const Vector& x,
                          double base = 1e-6) {
    Matrix jac(x.size(), x.size());
    for (Index j = 0; j < x.size(); ++j) {
        const double h = base * (1.0 + std::abs(x(j)));
        Vector xp = x;
        Vector xm = x;
        xp(j) += h;
        xm(j) -= h;
        jac.col(j) = (grad(xp) - grad(xm)) / (2.0 * h);
    }
    return jac;
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed, std::uint64_t stream) {
    cdeim::CounterRng rng(seed, stream);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

// Random matrix with orthonormal columns (QR of a Gaussian matrix).
inline Matrix random_orthonormal(Index rows, Index cols, std::uint64_t seed,
                                 std::uint64_t stream) {
    const Matrix g = random_matrix(rows, cols, seed, stream);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    return q;
}

// Largest singular value of a (small) matrix.
inline double spectral_norm(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

}  // namespace oracles
