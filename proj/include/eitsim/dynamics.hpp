#pragma once

#include <vector>

#include "eitsim/model.hpp"

namespace eitsim {

// Lindblad superoperator acting on column-stacked density matrices:
// vec(A X B) = (B^T kron A) vec(X).
struct Liouvillian {
    HilbertSpace space;
    SparseMatrix matrix;  // dim() x dim()

    long dim() const { return matrix.rows(); }
};

struct DensityMatrix {
    HilbertSpace space;
    DenseMatrix entries;

    double trace() const { return entries.trace().real(); }
};

struct CorrelationSeries {
    std::vector<double> tau;  // units 1/kappa
    std::vector<double> g2;
    double mean_photon = 0.0;  // steady-state <a^dag a>
};

inline constexpr long kDefaultSuperopCap = 100000;

// L(rho) = -i[H0 + H_d, rho] + sum_c (c rho c^dag - 1/2 {c^dag c, rho}).
Liouvillian build_liouvillian(const ModelParams& p, const HilbertSpace& space,
                              long superop_cap = kDefaultSuperopCap);

// Dense reference evaluation of the same map; test oracle for the sparse
// superoperator assembly.
DenseMatrix apply_master_equation(const ModelParams& p, const HilbertSpace& space,
                                  const DenseMatrix& rho);

// Unique rho with L rho = 0 and Tr rho = 1, from the bordered sparse linear
// system (one redundant diagonal equation replaced by the trace constraint).
// Degenerate null spaces are detected and reported as NumericalError.
DensityMatrix steady_state(const Liouvillian& liouv);

// vec(rho(t)) = exp(L t) vec(rho0) via an adaptive Krylov propagator.
DensityMatrix propagate(const Liouvillian& liouv, const DensityMatrix& rho0, double t);

DensityMatrix ground_state(const HilbertSpace& space);

double mean_photon_number(const DensityMatrix& rho);

// <a^dag a^dag a a> / <a^dag a>^2; requires <a^dag a> > 1e-12.
double g2_zero(const DensityMatrix& rho_ss);

// Quantum regression theorem on the given tau grid:
// g2(tau) = Tr[a^dag a exp(L tau)(a rho_ss a^dag)] / <a^dag a>^2.
CorrelationSeries g2_tau(const ModelParams& p, const std::vector<double>& tau_grid);

// vec / unvec under the column-stacking convention.
DenseVector vectorize(const DenseMatrix& m);
DenseMatrix unvectorize(const DenseVector& v, long rows);

}  // namespace eitsim
