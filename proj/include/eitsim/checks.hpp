#pragma once

#include <string>
#include <vector>

#include "eitsim/config.hpp"

namespace eitsim {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// The invariant suite behind the `check` command: operator algebra,
// excitation-number conservation, manifold bi-orthonormality, superoperator
// trace/hermiticity properties, steady-state contracts, and the truncation
// convergence flag (reported last, as "convergence").
std::vector<PropertyResult> run_property_checks(const RunConfig& cfg);

}  // namespace eitsim
