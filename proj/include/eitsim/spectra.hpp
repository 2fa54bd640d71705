#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "eitsim/model.hpp"

namespace eitsim {

// Bi-orthogonal eigensystem of one excitation-number block of the effective
// Hamiltonian. Eigenvalues are sorted by real part (imaginary part breaks
// ties); right vectors have unit 2-norm and L^dag R = identity.
struct ManifoldSpectrum {
    int n = 0;
    std::vector<Complex> eigenvalues;
    DenseMatrix right_vectors;           // columns
    DenseMatrix left_vectors;            // columns
    std::vector<long> basis_indices;     // block sub-basis, global indices
};

// Restriction of H_eff to the N_exc = n eigenspace, together with the global
// basis indices spanning the block. The block is empty when n exceeds the
// available excitations.
std::pair<DenseMatrix, std::vector<long>> manifold_block(const Operator& h_eff, int n);

ManifoldSpectrum diagonalize_manifold(const DenseMatrix& block,
                                      const std::vector<long>& basis_indices = {},
                                      int n = 0);

// Convenience: block extraction plus diagonalization.
ManifoldSpectrum manifold_spectrum(const Operator& h_eff, int n);

// Eq-2-style n=1 eigenvalues: eps0 = -i kappa/(1+alpha),
// eps_pm = -i kappa/2 +- omega sqrt(1 + alpha - (kappa/2 omega)^2).
// Order: {eps0, eps_minus, eps_plus}.
std::array<Complex, 3> analytic_n1(const ModelParams& p);

// Lossless resonant single-atom n=2 spectrum:
// eps = +-sqrt(G^2/2 +- sqrt(G^4/4 - 2 g13^2 g24^2)), G^2 = g24^2+omega^2+2 g13^2.
// Requires N=1, delta = Delta = 0, and all losses zero. Sorted ascending.
std::array<double, 4> analytic_n2_lossless(const ModelParams& p);

struct PerturbativeShift {
    Complex value;
    bool premise_ok = true;  // false when |Delta| < 10 g24
};

// Kerr-limit shift of the two-excitation trapping state:
// N=1: -chi 2 alpha/(1+2 alpha); N>1, |delta| above the degeneracy threshold:
// -2 chi alpha/(1+alpha)^2; N>1, delta = 0: 3/2 of the latter.
PerturbativeShift perturbative_shift(const ModelParams& p);

// Normalized (a^dag - (g13/omega) sum_k s21^k)|0>, the n=1 trapping state.
DenseVector trapping_vector_n1(const ModelParams& p, const HilbertSpace& space);

// Normalized (a^dag - (g13/omega) sum_k s21^k)^2 |0>, its two-excitation analog.
DenseVector trapping_vector_n2(const ModelParams& p, const HilbertSpace& space);

// Index of the eigenstate with maximal overlap against the analytic trapping
// form. Overlap must exceed `threshold`; two candidates above 0.9 is an error.
int find_trapping_state(const ManifoldSpectrum& spec, const DenseVector& analytic_vector,
                        double threshold = 0.8);

// |Re eps2* - 2 Re eps0|, eps2* being the n=2 eigenvalue closest to twice the
// n=1 trapping eigenvalue among states with a nonzero drive matrix element.
double anharmonicity(const ModelParams& p);

struct BlockadeReport {
    double p = 0.0;                              // sum_i W_{1->2i} / W_{0->1}
    std::vector<std::pair<int, double>> rates;   // (n=2 eigenstate index, W)
    double w01 = 0.0;
    double anharmonicity = 0.0;
};

// Golden-rule transition rates between dressed states with the drive tuned to
// the n=1 trapping resonance:
// W_{i->f} = eps_p^2 |<L_f|a^dag|R_i>|^2 Gamma_f / (det^2 + Gamma_f^2/4),
// Gamma_f = -2 Im eps_f, det = omega_drive - (Re eps_f - Re eps_i).
BlockadeReport blockade_figure(const ModelParams& p);

struct SpectrumRow {
    int n = 0;
    int index = 0;
    double re_eps = 0.0;
    double im_eps = 0.0;
    double overlap_eit = 0.0;
};

// Rows for the spectrum CSV dump: n=1 and n=2 manifolds with the overlap of
// each eigenvector against the matching trapping form.
std::vector<SpectrumRow> spectrum_rows(const ModelParams& p);

}  // namespace eitsim
