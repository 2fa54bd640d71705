#include "eitsim/dynamics.hpp"

#include <cmath>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "eitsim/expmv.hpp"

namespace eitsim {

DenseVector vectorize(const DenseMatrix& m) {
    return Eigen::Map<const DenseVector>(m.data(), m.size());
}

DenseMatrix unvectorize(const DenseVector& v, long rows) {
    if (v.size() % rows != 0) throw ConfigError("unvectorize: size mismatch");
    return Eigen::Map<const DenseMatrix>(v.data(), rows, v.size() / rows);
}

Liouvillian build_liouvillian(const ModelParams& p, const HilbertSpace& space,
                              long superop_cap) {
    p.validate();
    const long d = space.dim();
    if (d * d > superop_cap) {
        throw ConfigError("build_liouvillian: superoperator dimension " +
                          std::to_string(d * d) + " exceeds cap " +
                          std::to_string(superop_cap));
    }

    SparseMatrix identity(d, d);
    identity.setIdentity();

    const SparseMatrix h = hermitian_hamiltonian(p, space, /*with_drive=*/true).matrix;
    // Column stacking: vec(A X B) = (B^T kron A) vec(X).
    SparseMatrix liouv =
        -kImag * (kroneckerProduct(identity, h).eval() -
                  kroneckerProduct(SparseMatrix(h.transpose()), identity).eval());
    for (const Operator& c : jump_operators(p, space)) {
        const SparseMatrix cdc = (c.matrix.adjoint() * c.matrix).eval();
        liouv += kroneckerProduct(SparseMatrix(c.matrix.conjugate()), c.matrix).eval();
        liouv -= 0.5 * kroneckerProduct(identity, cdc).eval();
        liouv -= 0.5 * kroneckerProduct(SparseMatrix(cdc.transpose()), identity).eval();
    }
    liouv.prune(0.0, 0.0);
    liouv.makeCompressed();
    return {space, std::move(liouv)};
}

DenseMatrix apply_master_equation(const ModelParams& p, const HilbertSpace& space,
                                  const DenseMatrix& rho) {
    const DenseMatrix h = DenseMatrix(hermitian_hamiltonian(p, space, true).matrix);
    DenseMatrix out = -kImag * (h * rho - rho * h);
    for (const Operator& c : jump_operators(p, space)) {
        const DenseMatrix cd = DenseMatrix(c.matrix).adjoint();
        const DenseMatrix cm = DenseMatrix(c.matrix);
        const DenseMatrix cdc = cd * cm;
        out += cm * rho * cd - 0.5 * (cdc * rho + rho * cdc);
    }
    return out;
}

namespace {

// Bordered solve: the redundant diagonal equation at `border_row` (which must
// index a diagonal element of rho) is replaced by the trace constraint.
DenseMatrix solve_bordered(const Liouvillian& liouv, long border_row) {
    const long d = liouv.space.dim();
    const long dim2 = d * d;

    std::vector<Triplet> entries;
    entries.reserve(liouv.matrix.nonZeros() + d);
    for (int k = 0; k < liouv.matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(liouv.matrix, k); it; ++it) {
            if (it.row() != border_row) {
                entries.emplace_back(it.row(), it.col(), it.value());
            }
        }
    }
    for (long i = 0; i < d; ++i) {
        entries.emplace_back(border_row, i * d + i, 1.0);
    }
    SparseMatrix bordered(dim2, dim2);
    bordered.setFromTriplets(entries.begin(), entries.end());
    bordered.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(bordered);
    if (lu.info() != Eigen::Success) {
        throw NumericalError("steady_state: bordered system is singular "
                             "(degenerate null space?)");
    }
    DenseVector rhs = DenseVector::Zero(dim2);
    rhs[border_row] = 1.0;
    DenseVector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw NumericalError("steady_state: sparse solve failed");
    }

    DenseMatrix rho = unvectorize(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) {
        throw NumericalError("steady_state: traceless solution");
    }
    rho /= tr;
    return rho;
}

double trace_distance(const DenseMatrix& a, const DenseMatrix& b) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& liouv) {
    const long d = liouv.space.dim();
    const DenseMatrix rho = solve_bordered(liouv, 0);

    const double residual = (liouv.matrix * vectorize(rho)).norm();
    if (residual > 1e-9) {
        throw NumericalError("steady_state: residual " + std::to_string(residual) +
                             " exceeds 1e-9");
    }
    // A second bordered solve with a different redundant row lands on the same
    // state only when the null space is one-dimensional.
    const DenseMatrix rho_check = solve_bordered(liouv, d * d - 1);
    if (trace_distance(rho, rho_check) > 1e-6) {
        throw NumericalError("steady_state: degenerate null space (multiple steady states)");
    }
    return {liouv.space, rho};
}

DensityMatrix propagate(const Liouvillian& liouv, const DensityMatrix& rho0, double t) {
    if (t < 0.0) throw ConfigError("propagate: t must be >= 0");
    if (!(rho0.space == liouv.space)) throw ConfigError("propagate: space mismatch");
    DenseVector v = expmv(liouv.matrix, vectorize(rho0.entries), t);
    return {liouv.space, unvectorize(v, liouv.space.dim())};
}

DensityMatrix ground_state(const HilbertSpace& space) {
    DenseMatrix rho = DenseMatrix::Zero(space.dim(), space.dim());
    rho(0, 0) = 1.0;
    return {space, std::move(rho)};
}

double mean_photon_number(const DensityMatrix& rho) {
    const SparseMatrix n = photon_number(rho.space).matrix;
    return (n * rho.entries).trace().real();
}

double g2_zero(const DensityMatrix& rho_ss) {
    const double mean = mean_photon_number(rho_ss);
    if (mean <= 1e-12) {
        throw NumericalError("g2_zero: vacuum steady state, statistic undefined");
    }
    const SparseMatrix a = annihilator(rho_ss.space).matrix;
    const SparseMatrix ad = a.adjoint();
    const double numerator = (ad * ad * a * a * rho_ss.entries).trace().real();
    return numerator / (mean * mean);
}

CorrelationSeries g2_tau(const ModelParams& p, const std::vector<double>& tau_grid) {
    if (tau_grid.empty()) throw ConfigError("g2_tau: empty tau grid");
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (tau_grid[i] < 0.0 || (i > 0 && tau_grid[i] <= tau_grid[i - 1])) {
            throw ConfigError("g2_tau: tau grid must be non-negative and strictly increasing");
        }
    }
    const HilbertSpace space = build_space(p.n_atoms, p.n_max);
    const Liouvillian liouv = build_liouvillian(p, space);
    const DensityMatrix rho_ss = steady_state(liouv);
    const double mean = mean_photon_number(rho_ss);
    if (mean <= 1e-12) {
        throw NumericalError("g2_tau: vacuum steady state");
    }

    const SparseMatrix a = annihilator(space).matrix;
    const DenseMatrix seeded = a * rho_ss.entries * a.adjoint();
    const SparseMatrix number_op = photon_number(space).matrix;

    CorrelationSeries series;
    series.mean_photon = mean;
    series.tau = tau_grid;
    series.g2.reserve(tau_grid.size());

    DenseVector v = vectorize(seeded);
    double reached = 0.0;
    for (double tau : tau_grid) {
        if (tau > reached) {
            v = expmv(liouv.matrix, v, tau - reached);
            reached = tau;
        }
        const DenseMatrix evolved = unvectorize(v, space.dim());
        series.g2.push_back((number_op * evolved).trace().real() / (mean * mean));
    }
    return series;
}

}  // namespace eitsim
