#include "eitsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace eitsim {

namespace {

int excitation_count(const BasisLabel& label) {
    int n = label.photons;
    for (int level : label.levels) {
        if (level == 2 || level == 3) n += 1;
        if (level == 4) n += 2;
    }
    return n;
}

// Dense submatrix of a sparse operator on (rows x cols) global index sets.
DenseMatrix submatrix(const SparseMatrix& m, const std::vector<long>& rows,
                      const std::vector<long>& cols) {
    std::unordered_map<long, int> row_pos;
    row_pos.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);

    DenseMatrix out = DenseMatrix::Zero(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (SparseMatrix::InnerIterator it(m, cols[j]); it; ++it) {
            auto pos = row_pos.find(it.row());
            if (pos != row_pos.end()) out(pos->second, j) = it.value();
        }
    }
    return out;
}

double beta_ratio(const ModelParams& p) {
    if (p.g13 == 0.0) return 0.0;
    if (p.omega <= 0.0) throw ConfigError("trapping vector undefined: omega must be > 0");
    return p.g13 / p.omega;
}

// Overlap of a unit-norm reference vector with each unit-norm right eigenvector.
std::vector<double> overlaps(const ManifoldSpectrum& spec, const DenseVector& reference) {
    std::vector<double> out(spec.eigenvalues.size(), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::abs(spec.right_vectors.col(i).dot(reference));
    }
    return out;
}

DenseVector restrict_to_block(const DenseVector& v, const std::vector<long>& indices) {
    DenseVector out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) out[i] = v[indices[i]];
    return out;
}

}  // namespace

std::pair<DenseMatrix, std::vector<long>> manifold_block(const Operator& h_eff, int n) {
    std::vector<long> indices;
    for (long i = 0; i < h_eff.space.dim(); ++i) {
        if (excitation_count(h_eff.space.label(i)) == n) indices.push_back(i);
    }
    return {submatrix(h_eff.matrix, indices, indices), indices};
}

ManifoldSpectrum diagonalize_manifold(const DenseMatrix& block,
                                      const std::vector<long>& basis_indices, int n) {
    ManifoldSpectrum spec;
    spec.n = n;
    spec.basis_indices = basis_indices;
    const long d = block.rows();
    if (d == 0) return spec;
    if (block.cols() != d) throw ConfigError("diagonalize_manifold: block must be square");

    Eigen::ComplexEigenSolver<DenseMatrix> right_solver(block, true);
    Eigen::ComplexEigenSolver<DenseMatrix> left_solver(block.adjoint(), true);
    if (right_solver.info() != Eigen::Success || left_solver.info() != Eigen::Success) {
        throw NumericalError(
            "diagonalize_manifold: eigensolver did not converge (dim " +
            std::to_string(d) + ", |block| " + std::to_string(block.norm()) + ")");
    }

    // Sort right eigenpairs by (Re, Im); left eigenpairs by the same key of
    // the conjugated eigenvalue so clusters line up pairwise.
    auto sorted_order = [](const DenseVector& vals, bool conjugate) {
        std::vector<int> order(vals.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            Complex va = conjugate ? std::conj(vals[a]) : vals[a];
            Complex vb = conjugate ? std::conj(vals[b]) : vals[b];
            if (va.real() != vb.real()) return va.real() < vb.real();
            return va.imag() < vb.imag();
        });
        return order;
    };
    const auto r_order = sorted_order(right_solver.eigenvalues(), false);
    const auto l_order = sorted_order(left_solver.eigenvalues(), true);

    spec.eigenvalues.resize(d);
    spec.right_vectors.resize(d, d);
    spec.left_vectors.resize(d, d);
    double max_abs = 0.0;
    for (long i = 0; i < d; ++i) {
        spec.eigenvalues[i] = right_solver.eigenvalues()[r_order[i]];
        spec.right_vectors.col(i) = right_solver.eigenvectors().col(r_order[i]).normalized();
        spec.left_vectors.col(i) = left_solver.eigenvectors().col(l_order[i]);
        max_abs = std::max(max_abs, std::abs(spec.eigenvalues[i]));
    }

    // Pairing sanity: left eigenvalues must be the conjugates of the right ones.
    const double pair_tol = 1e-6 * std::max(max_abs, 1.0);
    for (long i = 0; i < d; ++i) {
        const Complex lv = std::conj(left_solver.eigenvalues()[l_order[i]]);
        if (std::abs(lv - spec.eigenvalues[i]) > pair_tol) {
            throw NumericalError("diagonalize_manifold: left/right eigenvalue pairing failed");
        }
    }

    // Bi-orthonormalize cluster by cluster (degenerate eigenvalues grouped
    // within 1e-8 * max |eps|).
    const double group_tol = 1e-8 * std::max(max_abs, 1.0);
    long start = 0;
    while (start < d) {
        long end = start + 1;
        while (end < d && std::abs(spec.eigenvalues[end] - spec.eigenvalues[end - 1]) <= group_tol) {
            ++end;
        }
        const long r = end - start;
        DenseMatrix overlap = spec.left_vectors.middleCols(start, r).adjoint() *
                              spec.right_vectors.middleCols(start, r);
        Eigen::FullPivLU<DenseMatrix> lu(overlap);
        if (!lu.isInvertible()) {
            throw NumericalError(
                "diagonalize_manifold: defective eigenvalue cluster near eps = (" +
                std::to_string(spec.eigenvalues[start].real()) + ", " +
                std::to_string(spec.eigenvalues[start].imag()) + ")");
        }
        spec.left_vectors.middleCols(start, r) =
            spec.left_vectors.middleCols(start, r) * lu.inverse().adjoint();
        start = end;
    }
    return spec;
}

ManifoldSpectrum manifold_spectrum(const Operator& h_eff, int n) {
    auto [block, indices] = manifold_block(h_eff, n);
    return diagonalize_manifold(block, indices, n);
}

std::array<Complex, 3> analytic_n1(const ModelParams& p) {
    if (p.omega <= 0.0) throw ConfigError("analytic_n1: omega must be > 0");
    const double alpha = p.alpha();
    const Complex eps0 = -kImag * p.kappa / (1.0 + alpha);
    const double half_kappa_sq = p.kappa / (2.0 * p.omega);
    const Complex root = std::sqrt(Complex(1.0 + alpha - half_kappa_sq * half_kappa_sq));
    const Complex eps_plus = -kImag * p.kappa / 2.0 + p.omega * root;
    const Complex eps_minus = -kImag * p.kappa / 2.0 - p.omega * root;
    return {eps0, eps_minus, eps_plus};
}

std::array<double, 4> analytic_n2_lossless(const ModelParams& p) {
    if (p.n_atoms != 1) throw ConfigError("analytic_n2_lossless: requires n_atoms = 1");
    if (p.delta != 0.0 || p.big_delta != 0.0) {
        throw ConfigError("analytic_n2_lossless: requires delta = big_delta = 0");
    }
    if (p.kappa != 0.0 || p.gamma31 != 0.0 || p.gamma32 != 0.0 || p.gamma4 != 0.0) {
        throw ConfigError("analytic_n2_lossless: requires all losses zero");
    }
    const double g_sq = p.g24 * p.g24 + p.omega * p.omega + 2.0 * p.g13 * p.g13;
    // G^4/4 - 2 g13^2 g24^2 >= 0 always (AM-GM on g24^2 + 2 g13^2).
    const double inner = std::sqrt(std::max(0.0, g_sq * g_sq / 4.0 -
                                            2.0 * p.g13 * p.g13 * p.g24 * p.g24));
    const double outer_plus = std::sqrt(g_sq / 2.0 + inner);
    const double outer_minus = std::sqrt(std::max(0.0, g_sq / 2.0 - inner));
    return {-outer_plus, -outer_minus, outer_minus, outer_plus};
}

PerturbativeShift perturbative_shift(const ModelParams& p) {
    const double chi = p.chi();
    PerturbativeShift out;
    out.premise_ok = std::abs(p.big_delta) >= 10.0 * p.g24;
    const double alpha = p.alpha();
    if (p.n_atoms == 1) {
        out.value = Complex(-chi * 2.0 * alpha / (1.0 + 2.0 * alpha));
        return out;
    }
    const double eps_n2 = -2.0 * chi * alpha / ((1.0 + alpha) * (1.0 + alpha));
    // Degeneracy threshold: Eq-9 branch needs |delta| > 10 |eps_n2|.
    if (std::abs(p.delta) > 10.0 * std::abs(eps_n2)) {
        out.value = Complex(eps_n2);
    } else {
        out.value = Complex(1.5 * eps_n2);
    }
    return out;
}

DenseVector trapping_vector_n1(const ModelParams& p, const HilbertSpace& space) {
    if (space.n_max() < 1) throw ConfigError("trapping_vector_n1: n_max must be >= 1");
    const double beta = beta_ratio(p);
    DenseVector vac = DenseVector::Zero(space.dim());
    vac[0] = 1.0;
    SparseMatrix dark = annihilator(space).matrix.adjoint();
    for (int k = 1; k <= space.n_atoms(); ++k) {
        dark -= Complex(beta) * atomic_sigma(space, 2, 1, k).matrix;
    }
    DenseVector v = dark * vac;
    return v.normalized();
}

DenseVector trapping_vector_n2(const ModelParams& p, const HilbertSpace& space) {
    if (space.n_max() < 2) throw ConfigError("trapping_vector_n2: n_max must be >= 2");
    const double beta = beta_ratio(p);
    DenseVector vac = DenseVector::Zero(space.dim());
    vac[0] = 1.0;
    SparseMatrix dark = annihilator(space).matrix.adjoint();
    for (int k = 1; k <= space.n_atoms(); ++k) {
        dark -= Complex(beta) * atomic_sigma(space, 2, 1, k).matrix;
    }
    DenseVector v = dark * (dark * vac).eval();
    return v.normalized();
}

int find_trapping_state(const ManifoldSpectrum& spec, const DenseVector& analytic_vector,
                        double threshold) {
    if (spec.eigenvalues.empty()) {
        throw NumericalError("find_trapping_state: empty spectrum");
    }
    DenseVector ref = analytic_vector;
    if (static_cast<long>(spec.basis_indices.size()) == spec.right_vectors.rows() &&
        analytic_vector.size() != spec.right_vectors.rows()) {
        ref = restrict_to_block(analytic_vector, spec.basis_indices);
        double norm = ref.norm();
        if (norm < 1e-12) {
            throw NumericalError("find_trapping_state: reference vector has no weight in block");
        }
        ref /= norm;
    }
    const auto ov = overlaps(spec, ref);
    int best = 0;
    int n_high = 0;
    for (std::size_t i = 0; i < ov.size(); ++i) {
        if (ov[i] > ov[best]) best = static_cast<int>(i);
        if (ov[i] > 0.9) ++n_high;
    }
    if (n_high > 1) {
        throw NumericalError("find_trapping_state: ambiguous identification, " +
                             std::to_string(n_high) + " candidates with overlap > 0.9");
    }
    if (ov[best] < threshold) {
        throw NumericalError("find_trapping_state: best overlap " + std::to_string(ov[best]) +
                             " below threshold " + std::to_string(threshold));
    }
    return best;
}

namespace {

struct ManifoldPair {
    ManifoldSpectrum n1;
    ManifoldSpectrum n2;
    int eit_index = 0;
    DenseMatrix adag_21;  // a^dag restricted to (n=2 rows) x (n=1 cols)
    DenseVector adag_10;  // a^dag column from the ground state into the n=1 block
};

ManifoldPair build_manifolds(const ModelParams& p) {
    p.validate();
    if (p.n_max < 2) throw ConfigError("manifold analysis requires n_max >= 2");
    const HilbertSpace space = build_space(p.n_atoms, p.n_max);
    const Operator h_eff = effective_hamiltonian(p, space);

    ManifoldPair out;
    out.n1 = manifold_spectrum(h_eff, 1);
    out.n2 = manifold_spectrum(h_eff, 2);
    out.eit_index = find_trapping_state(out.n1, trapping_vector_n1(p, space));

    const SparseMatrix adag = annihilator(space).matrix.adjoint();
    out.adag_21 = submatrix(adag, out.n2.basis_indices, out.n1.basis_indices);

    auto [block0, idx0] = manifold_block(h_eff, 0);
    if (idx0.size() != 1) {
        throw NumericalError("unexpected n=0 block dimension " + std::to_string(idx0.size()));
    }
    out.adag_10 = submatrix(adag, out.n1.basis_indices, idx0).col(0);
    return out;
}

// eps2* per the anharmonicity definition; returns (index, |Re eps2* - 2 Re eps0|).
std::pair<int, double> nearest_reachable_n2(const ManifoldPair& m) {
    const Complex eps0 = m.n1.eigenvalues[m.eit_index];
    const DenseVector driven = m.adag_21 * m.n1.right_vectors.col(m.eit_index);
    double max_mel = 0.0;
    std::vector<double> mel(m.n2.eigenvalues.size());
    for (std::size_t f = 0; f < m.n2.eigenvalues.size(); ++f) {
        mel[f] = std::abs(m.n2.left_vectors.col(f).dot(driven));
        max_mel = std::max(max_mel, mel[f]);
    }
    if (max_mel <= 0.0) {
        throw NumericalError("anharmonicity: no n=2 state is reachable by the drive");
    }
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t f = 0; f < m.n2.eigenvalues.size(); ++f) {
        if (mel[f] <= 1e-8 * max_mel) continue;
        const double dist = std::abs(m.n2.eigenvalues[f].real() - 2.0 * eps0.real());
        if (best < 0 || dist < best_dist) {
            best = static_cast<int>(f);
            best_dist = dist;
        }
    }
    return {best, best_dist};
}

}  // namespace

double anharmonicity(const ModelParams& p) {
    const ManifoldPair m = build_manifolds(p);
    return nearest_reachable_n2(m).second;
}

BlockadeReport blockade_figure(const ModelParams& p) {
    if (p.eps_p <= 0.0) throw ConfigError("blockade_figure: eps_p must be > 0");
    const ManifoldPair m = build_manifolds(p);

    const Complex eps_eit = m.n1.eigenvalues[m.eit_index];
    const double omega_drive = eps_eit.real();
    const double gamma_eit = -2.0 * eps_eit.imag();
    if (gamma_eit <= 0.0) {
        throw NumericalError("blockade_figure: trapping state has zero linewidth");
    }

    const double eps_sq = p.eps_p * p.eps_p;
    const Complex mel01 = m.n1.left_vectors.col(m.eit_index).dot(m.adag_10);
    BlockadeReport report;
    report.w01 = eps_sq * std::norm(mel01) * gamma_eit / (gamma_eit * gamma_eit / 4.0);
    if (report.w01 <= 0.0) {
        throw NumericalError("blockade_figure: vanishing ground-to-trapping rate");
    }

    const DenseVector driven = m.adag_21 * m.n1.right_vectors.col(m.eit_index);
    double total = 0.0;
    for (std::size_t f = 0; f < m.n2.eigenvalues.size(); ++f) {
        const double mel_sq = std::norm(m.n2.left_vectors.col(f).dot(driven));
        const double gamma_f = std::max(0.0, -2.0 * m.n2.eigenvalues[f].imag());
        const double det = omega_drive - (m.n2.eigenvalues[f].real() - eps_eit.real());
        double rate = 0.0;
        if (gamma_f > 0.0) {
            rate = eps_sq * mel_sq * gamma_f / (det * det + gamma_f * gamma_f / 4.0);
        } else if (mel_sq > 0.0 && std::abs(det) < 1e-12) {
            throw NumericalError("blockade_figure: undamped resonant n=2 channel");
        }
        report.rates.emplace_back(static_cast<int>(f), rate);
        total += rate;
    }
    report.p = total / report.w01;
    report.anharmonicity = nearest_reachable_n2(m).second;
    return report;
}

std::vector<SpectrumRow> spectrum_rows(const ModelParams& p) {
    p.validate();
    if (p.n_max < 2) throw ConfigError("spectrum_rows: n_max must be >= 2");
    const HilbertSpace space = build_space(p.n_atoms, p.n_max);
    const Operator h_eff = effective_hamiltonian(p, space);

    std::vector<SpectrumRow> rows;
    for (int n : {1, 2}) {
        ManifoldSpectrum spec = manifold_spectrum(h_eff, n);
        DenseVector ref = (n == 1) ? trapping_vector_n1(p, space)
                                   : trapping_vector_n2(p, space);
        DenseVector ref_block = restrict_to_block(ref, spec.basis_indices);
        const double norm = ref_block.norm();
        if (norm > 1e-12) ref_block /= norm;
        for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
            SpectrumRow row;
            row.n = n;
            row.index = static_cast<int>(i);
            row.re_eps = spec.eigenvalues[i].real();
            row.im_eps = spec.eigenvalues[i].imag();
            row.overlap_eit = std::abs(spec.right_vectors.col(i).dot(ref_block));
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace eitsim
