#pragma once

#include <vector>

#include "eitsim/hilbert.hpp"
#include "eitsim/types.hpp"

namespace eitsim {

// All rates and detunings are expressed in units of the cavity decay kappa,
// which is 1 by convention. omega is half the coupling-field Rabi frequency.
struct ModelParams {
    int n_atoms = 1;
    int n_max = 4;
    double g13 = 0.0;
    double g24 = 0.0;
    double omega = 0.0;
    double kappa = 1.0;
    double gamma31 = 0.0;
    double gamma32 = 0.0;
    double gamma4 = 0.0;
    double delta = 0.0;      // omega_31 - omega_cav
    double big_delta = 0.0;  // omega_41 - omega_21 - omega_cav
    double eps_p = 0.0;      // drive strength

    // Throws ConfigError on negative rates or bad counts. kappa = 0 is
    // permitted so the lossless spectral limits are reachable exactly.
    void validate() const;

    // alpha = N g13^2 / omega^2; requires omega > 0.
    double alpha() const;

    // chi = g24^2 / Delta; requires Delta != 0.
    double chi() const;
};

// H0/hbar = sum_k [ delta s33 + Delta s44 + omega (s32 + s23)
//                   + g13 (a s31 + a^dag s13) + g24 (a s42 + a^dag s24) ],
// plus i eps_p (a^dag - a) when with_drive is set. Exactly self-adjoint.
Operator hermitian_hamiltonian(const ModelParams& p, const HilbertSpace& space,
                               bool with_drive);

// { sqrt(2 kappa) a } plus per-atom sqrt(gamma31) s13, sqrt(gamma32) s23,
// sqrt(gamma4) s24. Zero-rate channels are omitted.
std::vector<Operator> jump_operators(const ModelParams& p, const HilbertSpace& space);

// H_eff = H0(no drive) - (i/2) sum_c c^dag c.
Operator effective_hamiltonian(const ModelParams& p, const HilbertSpace& space);

// N_exc = a^dag a + sum_k (s22 + s33 + 2 s44); diagonal with integer spectrum.
Operator excitation_number(const HilbertSpace& space);

// -chi (a^dag a) sum_k s22 with chi = g24^2 / Delta.
Operator kerr_perturbation(const ModelParams& p, const HilbertSpace& space);

}  // namespace eitsim
