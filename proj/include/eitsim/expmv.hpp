#pragma once

#include "eitsim/types.hpp"

namespace eitsim {

// w = exp(t A) v for sparse A via Arnoldi with adaptive substepping.
// tol is the per-step relative error target. Throws NumericalError on
// step-size underflow.
DenseVector expmv(const SparseMatrix& A, const DenseVector& v, double t,
                  double tol = 1e-12, int krylov_dim = 30);

}  // namespace eitsim
