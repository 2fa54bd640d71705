#pragma once

#include <vector>

#include "eitsim/types.hpp"

namespace eitsim {

// One basis ket of the composite space: photon number plus the level (1..4)
// of every atom.
struct BasisLabel {
    int photons = 0;
    std::vector<int> levels;  // size n_atoms, values in {1,2,3,4}
};

// Tensor-product space of one cavity mode (Fock cutoff n_max) and n_atoms
// four-level atoms. Basis ordering is fixed: photon index slowest, then
// atom 1, atom 2, ... so that index(n, l1..lN) =
// ((n*4 + (l1-1))*4 + (l2-1))*4 + ...  CSV dumps of eigenvectors are
// therefore comparable across implementations.
class HilbertSpace {
public:
    static constexpr long kDefaultDimCap = 10000;

    HilbertSpace(int n_atoms, int n_max, long dim_cap = kDefaultDimCap);

    int n_atoms() const { return n_atoms_; }
    int n_max() const { return n_max_; }
    long dim() const { return dim_; }

    long index(const BasisLabel& label) const;
    BasisLabel label(long index) const;

    bool operator==(const HilbertSpace& other) const {
        return n_atoms_ == other.n_atoms_ && n_max_ == other.n_max_;
    }

private:
    int n_atoms_;
    int n_max_;
    long dim_;
};

// Sparse operator bound to its space. Spaces and operators are immutable
// after construction; safe to share across threads.
struct Operator {
    HilbertSpace space;
    SparseMatrix matrix;

    Operator adjoint() const { return {space, SparseMatrix(matrix.adjoint())}; }
};

HilbertSpace build_space(int n_atoms, int n_max, long dim_cap = HilbertSpace::kDefaultDimCap);

// a |n, atoms> = sqrt(n) |n-1, atoms>, identity on the atomic factors.
Operator annihilator(const HilbertSpace& space);

// |i><j| on atom k (levels and atom index are 1-based), identity elsewhere.
Operator atomic_sigma(const HilbertSpace& space, int i, int j, int k);

// Diagonal a^dag a.
Operator photon_number(const HilbertSpace& space);

}  // namespace eitsim
