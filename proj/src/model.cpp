#include "eitsim/model.hpp"

#include <cmath>

namespace eitsim {

void ModelParams::validate() const {
    if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1");
    if (n_max < 0) throw ConfigError("n_max must be >= 0");
    auto nonneg = [](double v, const char* name) {
        if (v < 0.0 || !std::isfinite(v)) {
            throw ConfigError(std::string(name) + " must be finite and >= 0");
        }
    };
    nonneg(g13, "g13");
    nonneg(g24, "g24");
    nonneg(omega, "omega");
    nonneg(kappa, "kappa");
    nonneg(gamma31, "gamma31");
    nonneg(gamma32, "gamma32");
    nonneg(gamma4, "gamma4");
    nonneg(eps_p, "eps_p");
    if (!std::isfinite(delta)) throw ConfigError("delta must be finite");
    if (!std::isfinite(big_delta)) throw ConfigError("big_delta must be finite");
    if (g13 > 0.0 && omega == 0.0) {
        throw ConfigError("omega must be > 0 when g13 > 0 (alpha undefined)");
    }
}

double ModelParams::alpha() const {
    if (omega <= 0.0) throw ConfigError("alpha undefined: omega must be > 0");
    return n_atoms * g13 * g13 / (omega * omega);
}

double ModelParams::chi() const {
    if (big_delta == 0.0) throw ConfigError("chi undefined: big_delta must be != 0");
    return g24 * g24 / big_delta;
}

Operator hermitian_hamiltonian(const ModelParams& p, const HilbertSpace& space,
                               bool with_drive) {
    const Operator a = annihilator(space);
    const SparseMatrix ad = a.matrix.adjoint();

    SparseMatrix h(space.dim(), space.dim());
    for (int k = 1; k <= space.n_atoms(); ++k) {
        const SparseMatrix s33 = atomic_sigma(space, 3, 3, k).matrix;
        const SparseMatrix s44 = atomic_sigma(space, 4, 4, k).matrix;
        const SparseMatrix s32 = atomic_sigma(space, 3, 2, k).matrix;
        const SparseMatrix s31 = atomic_sigma(space, 3, 1, k).matrix;
        const SparseMatrix s42 = atomic_sigma(space, 4, 2, k).matrix;
        h += Complex(p.delta) * s33 + Complex(p.big_delta) * s44;
        h += Complex(p.omega) * (s32 + SparseMatrix(s32.adjoint()));
        SparseMatrix g13_term = p.g13 * (a.matrix * s31).eval();
        h += g13_term + SparseMatrix(g13_term.adjoint());
        SparseMatrix g24_term = p.g24 * (a.matrix * s42).eval();
        h += g24_term + SparseMatrix(g24_term.adjoint());
    }
    if (with_drive) {
        h += kImag * p.eps_p * SparseMatrix(ad - a.matrix);
    }
    h.prune(0.0, 0.0);
    return {space, std::move(h)};
}

std::vector<Operator> jump_operators(const ModelParams& p, const HilbertSpace& space) {
    std::vector<Operator> out;
    if (p.kappa > 0.0) {
        Operator a = annihilator(space);
        a.matrix *= std::sqrt(2.0 * p.kappa);
        out.push_back(std::move(a));
    }
    for (int k = 1; k <= space.n_atoms(); ++k) {
        if (p.gamma31 > 0.0) {
            Operator s = atomic_sigma(space, 1, 3, k);
            s.matrix *= std::sqrt(p.gamma31);
            out.push_back(std::move(s));
        }
        if (p.gamma32 > 0.0) {
            Operator s = atomic_sigma(space, 2, 3, k);
            s.matrix *= std::sqrt(p.gamma32);
            out.push_back(std::move(s));
        }
        if (p.gamma4 > 0.0) {
            Operator s = atomic_sigma(space, 2, 4, k);
            s.matrix *= std::sqrt(p.gamma4);
            out.push_back(std::move(s));
        }
    }
    return out;
}

Operator effective_hamiltonian(const ModelParams& p, const HilbertSpace& space) {
    Operator h = hermitian_hamiltonian(p, space, /*with_drive=*/false);
    for (const Operator& c : jump_operators(p, space)) {
        h.matrix -= Complex(0.0, 0.5) * SparseMatrix(c.matrix.adjoint() * c.matrix);
    }
    h.matrix.prune(0.0, 0.0);
    return h;
}

Operator excitation_number(const HilbertSpace& space) {
    SparseMatrix n = photon_number(space).matrix;
    for (int k = 1; k <= space.n_atoms(); ++k) {
        n += atomic_sigma(space, 2, 2, k).matrix;
        n += atomic_sigma(space, 3, 3, k).matrix;
        n += 2.0 * atomic_sigma(space, 4, 4, k).matrix;
    }
    return {space, std::move(n)};
}

Operator kerr_perturbation(const ModelParams& p, const HilbertSpace& space) {
    const double chi = p.chi();
    SparseMatrix s22_sum(space.dim(), space.dim());
    for (int k = 1; k <= space.n_atoms(); ++k) {
        s22_sum += atomic_sigma(space, 2, 2, k).matrix;
    }
    SparseMatrix m = -chi * (photon_number(space).matrix * s22_sum).eval();
    return {space, std::move(m)};
}

}  // namespace eitsim
