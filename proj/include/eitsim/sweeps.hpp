#pragma once

#include <string>
#include <vector>

#include "eitsim/dynamics.hpp"
#include "eitsim/spectra.hpp"

namespace eitsim {

struct SweepRecord {
    double delta = 0.0;
    double g2_zero = 0.0;
    double mean_photon = 0.0;
    double eit_linewidth = 0.0;   // Gamma = -2 Im eps of the n=1 trapping state
    double anharmonicity = 0.0;
    double p_blockade = 0.0;
    double shift_eq9 = 0.0;       // perturbative shift (NaN when chi undefined)
    double shift_numeric = 0.0;
    std::string error;            // empty on success
};

struct SweepResult {
    std::string axis = "delta";
    std::vector<double> grid;
    std::vector<SweepRecord> records;
};

// One record per grid point; failures are recorded per point and the sweep
// continues. Points run in parallel (EITSIM_THREADS caps the worker count);
// output ordering follows the grid.
SweepResult sweep_delta(const ModelParams& p, const std::vector<double>& grid);

// Uniform tau grid on [0, tau_max] delegating to dynamics::g2_tau.
CorrelationSeries g2_tau_profile(const ModelParams& p, double tau_max, int steps);

struct ConvergenceReport {
    double g2_base = 0.0;
    double g2_refined = 0.0;
    double g2_rel_delta = 0.0;
    Complex eit_base;
    Complex eit_refined;
    double eit_rel_delta = 0.0;
    bool flagged = false;  // true when either relative delta exceeds 1e-3
};

// Recomputes g2(0) and the n=1 trapping eigenvalue at n_max and n_max + 1.
ConvergenceReport convergence_check(const ModelParams& p);

// Worker count for parallel maps: min(hardware, jobs), capped by the
// EITSIM_THREADS environment variable when set.
int sweep_thread_count(std::size_t jobs);

}  // namespace eitsim
