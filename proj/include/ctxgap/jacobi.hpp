#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ctxgap {

/// Eigenvalues in descending order; eigenvectors as matching columns.
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Cyclic Jacobi rotations for a dense symmetric matrix.  Converges so that
/// ||A - V diag(values) V^T||_max <= 1e-12 ||A||_max and ||V^T V - I||_max <= 1e-12.
/// Throws std::invalid_argument if A is not symmetric to `symmetry_tol`.
inline EigenDecomposition jacobi_eigen(const Eigen::MatrixXd& A, double symmetry_tol = 1e-12) {
    if (A.rows() != A.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");
    const int n = static_cast<int>(A.rows());
    const double scale = A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * std::max(1.0, scale))
        throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");

    Eigen::MatrixXd M = (A + A.transpose()) / 2.0;
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(M(i, j)));
        if (off <= 1e-15 * std::max(1.0, scale)) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = M(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double tau = (M(q, q) - M(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = M(k, p), mkq = M(k, q);
                    M(k, p) = c * mkp - s * mkq;
                    M(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = M(p, k), mqk = M(q, k);
                    M(p, k) = c * mpk - s * mqk;
                    M(q, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return M(a, a) > M(b, b); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.values(k) = M(src, src);
        out.vectors.col(k) = V.col(src);
        // Sign convention: largest-magnitude component positive.
        int arg = 0;
        out.vectors.col(k).cwiseAbs().maxCoeff(&arg);
        if (out.vectors(arg, k) < 0.0) out.vectors.col(k) = -out.vectors.col(k);
    }
    return out;
}

inline double lambda_max(const Eigen::MatrixXd& A) { return jacobi_eigen(A).values(0); }

inline double lambda_min(const Eigen::MatrixXd& A) {
    const EigenDecomposition d = jacobi_eigen(A);
    return d.values(d.values.size() - 1);
}

}  // namespace ctxgap
