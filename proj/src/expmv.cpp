#include "eitsim/expmv.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace eitsim {

namespace {

double inf_norm(const SparseMatrix& a) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            row_sums[it.row()] += std::abs(it.value());
        }
    }
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

}  // namespace

// Arnoldi-based action of the matrix exponential with adaptive substepping
// (Sidje-style error control from the augmented Hessenberg exponential).
DenseVector expmv(const SparseMatrix& A, const DenseVector& v, double t,
                  double tol, int krylov_dim) {
    if (A.rows() != A.cols() || A.rows() != v.size()) {
        throw ConfigError("expmv: dimension mismatch");
    }
    if (t < 0.0) throw ConfigError("expmv: t must be >= 0");

    const long n = A.rows();
    DenseVector w = v;
    double beta = w.norm();
    if (t == 0.0 || beta == 0.0) return w;

    const int m = static_cast<int>(std::min<long>(krylov_dim, n));
    const double anorm = std::max(inf_norm(A), 1e-300);
    const double break_tol = 1e-12;

    // Initial step from the classical a-priori bound.
    double fact = std::sqrt(2.0 * M_PI * (m + 1)) * std::pow((m + 1) / M_E, m + 1);
    double tau = std::min(t, (1.0 / anorm) *
                                 std::pow(fact * tol / (4.0 * beta * anorm), 1.0 / m));

    DenseMatrix krylov_basis(n, m + 2);
    double t_done = 0.0;
    long iterations = 0;
    while (t_done < t) {
        if (++iterations > 1000000) {
            throw NumericalError("expmv: step-size underflow (too many substeps)");
        }
        tau = std::min(tau, t - t_done);
        if (tau < t * 1e-14) {
            throw NumericalError("expmv: step-size underflow");
        }

        // Arnoldi factorization A V_m = V_m H_m + h_{m+1,m} v_{m+1} e_m^T.
        DenseMatrix hess = DenseMatrix::Zero(m + 2, m + 2);
        krylov_basis.col(0) = w / beta;
        int used = m;
        bool breakdown = false;
        for (int j = 0; j < m; ++j) {
            DenseVector q = A * krylov_basis.col(j);
            for (int i = 0; i <= j; ++i) {
                const Complex hij = krylov_basis.col(i).dot(q);
                hess(i, j) = hij;
                q -= hij * krylov_basis.col(i);
            }
            // One re-orthogonalization pass keeps the basis clean.
            for (int i = 0; i <= j; ++i) {
                const Complex corr = krylov_basis.col(i).dot(q);
                hess(i, j) += corr;
                q -= corr * krylov_basis.col(i);
            }
            const double h_next = q.norm();
            if (h_next < break_tol * anorm) {
                used = j + 1;
                breakdown = true;
                break;
            }
            hess(j + 1, j) = h_next;
            krylov_basis.col(j + 1) = q / h_next;
        }

        if (breakdown) {
            // Krylov subspace is invariant: the small exponential is exact.
            tau = t - t_done;
            DenseMatrix f = (tau * hess.topLeftCorner(used, used)).exp();
            w = beta * (krylov_basis.leftCols(used) * f.col(0));
            t_done = t;
            break;
        }

        const double avnorm = (A * krylov_basis.col(m)).norm();
        hess(m + 1, m) = 1.0;

        // Adapt tau until the local error estimate passes.
        DenseMatrix f;
        double err_loc = 0.0;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 60) {
                throw NumericalError("expmv: step-size underflow (no acceptable step)");
            }
            f = (tau * hess).exp();
            const double err1 = std::abs(beta * f(m, 0));
            const double err2 = std::abs(beta * f(m + 1, 0) * avnorm);
            if (err1 > 10.0 * err2) {
                err_loc = err2;
            } else if (err2 > err1) {
                err_loc = err1;
            } else {
                err_loc = err1 * err2 / (err1 - err2 + 1e-300);
            }
            const double target = std::max(tau * tol * beta, 1e-300);
            if (err_loc <= 1.2 * target) break;
            tau *= 0.9 * std::pow(target / err_loc, 1.0 / m);
            if (tau < t * 1e-14) {
                throw NumericalError("expmv: step-size underflow");
            }
        }

        w = beta * (krylov_basis.leftCols(m + 1) * f.col(0).head(m + 1));
        t_done += tau;
        beta = w.norm();
        if (beta == 0.0) break;

        const double target = std::max(tau * tol * beta, 1e-300);
        tau *= 0.9 * std::pow(target / std::max(err_loc, 1e-300), 1.0 / m);
    }
    return w;
}

}  // namespace eitsim
