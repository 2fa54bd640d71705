#include "eitsim/hilbert.hpp"

#include <cmath>

namespace eitsim {

namespace {

long pow4(int n) {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= 4;
    return r;
}

}  // namespace

HilbertSpace::HilbertSpace(int n_atoms, int n_max, long dim_cap)
    : n_atoms_(n_atoms), n_max_(n_max) {
    if (n_atoms < 1) throw ConfigError("HilbertSpace: n_atoms must be >= 1");
    if (n_max < 0) throw ConfigError("HilbertSpace: n_max must be >= 0");
    dim_ = static_cast<long>(n_max + 1) * pow4(n_atoms);
    if (dim_ > dim_cap) {
        throw ConfigError("HilbertSpace: dimension " + std::to_string(dim_) +
                          " exceeds cap " + std::to_string(dim_cap));
    }
}

long HilbertSpace::index(const BasisLabel& label) const {
    if (label.photons < 0 || label.photons > n_max_ ||
        static_cast<int>(label.levels.size()) != n_atoms_) {
        throw ConfigError("HilbertSpace::index: label does not match space");
    }
    long idx = label.photons;
    for (int k = 0; k < n_atoms_; ++k) {
        int level = label.levels[k];
        if (level < 1 || level > 4) {
            throw ConfigError("HilbertSpace::index: atomic level out of range");
        }
        idx = idx * 4 + (level - 1);
    }
    return idx;
}

BasisLabel HilbertSpace::label(long index) const {
    if (index < 0 || index >= dim_) {
        throw ConfigError("HilbertSpace::label: index out of range");
    }
    BasisLabel out;
    out.levels.assign(n_atoms_, 1);
    for (int k = n_atoms_ - 1; k >= 0; --k) {
        out.levels[k] = static_cast<int>(index % 4) + 1;
        index /= 4;
    }
    out.photons = static_cast<int>(index);
    return out;
}

HilbertSpace build_space(int n_atoms, int n_max, long dim_cap) {
    return HilbertSpace(n_atoms, n_max, dim_cap);
}

Operator annihilator(const HilbertSpace& space) {
    const long atom_dim = space.dim() / (space.n_max() + 1);
    std::vector<Triplet> entries;
    entries.reserve(space.dim());
    for (int n = 1; n <= space.n_max(); ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        for (long j = 0; j < atom_dim; ++j) {
            entries.emplace_back((n - 1) * atom_dim + j, n * atom_dim + j, amp);
        }
    }
    SparseMatrix m(space.dim(), space.dim());
    m.setFromTriplets(entries.begin(), entries.end());
    return {space, std::move(m)};
}

Operator atomic_sigma(const HilbertSpace& space, int i, int j, int k) {
    if (i < 1 || i > 4 || j < 1 || j > 4) {
        throw ConfigError("atomic_sigma: levels must be in 1..4");
    }
    if (k < 1 || k > space.n_atoms()) {
        throw ConfigError("atomic_sigma: atom index out of range");
    }
    // Stride of atom k's level digit in the mixed-radix index.
    long stride = 1;
    for (int m = space.n_atoms(); m > k; --m) stride *= 4;

    std::vector<Triplet> entries;
    entries.reserve(space.dim() / 4);
    for (long idx = 0; idx < space.dim(); ++idx) {
        const int level = static_cast<int>((idx / stride) % 4) + 1;
        if (level == j) {
            entries.emplace_back(idx + static_cast<long>(i - j) * stride, idx, 1.0);
        }
    }
    SparseMatrix m(space.dim(), space.dim());
    m.setFromTriplets(entries.begin(), entries.end());
    return {space, std::move(m)};
}

Operator photon_number(const HilbertSpace& space) {
    const long atom_dim = space.dim() / (space.n_max() + 1);
    std::vector<Triplet> entries;
    entries.reserve(space.dim());
    for (int n = 1; n <= space.n_max(); ++n) {
        for (long j = 0; j < atom_dim; ++j) {
            entries.emplace_back(n * atom_dim + j, n * atom_dim + j,
                                 static_cast<double>(n));
        }
    }
    SparseMatrix m(space.dim(), space.dim());
    m.setFromTriplets(entries.begin(), entries.end());
    return {space, std::move(m)};
}

}  // namespace eitsim
