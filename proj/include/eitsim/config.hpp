#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eitsim/model.hpp"

namespace eitsim {

// Flat key = value run configuration. Unknown keys are rejected; missing
// required keys are rejected with the key name in the message.
struct RunConfig {
    ModelParams params;

    long dim_cap = HilbertSpace::kDefaultDimCap;
    long superop_cap = 100000;
    double tau_max = 20.0;
    int tau_steps = 201;
    std::optional<std::string> grid_spec;  // "lo:hi:steps"
    std::string out;                       // output path; default per command

    // Resolved sweep grid: grid_spec when present, else the default delta
    // window [-1.2 g13, +1.2 g13] with 97 points.
    std::vector<double> sweep_grid() const;

    // Exact textual echo of every parameter, in canonical key order, with
    // values printed so they reload bit-identically.
    std::map<std::string, std::string> echo() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// "lo:hi:steps" -> uniform grid with steps >= 1 points (steps = 1 requires lo == hi).
std::vector<double> parse_grid_spec(const std::string& spec);

}  // namespace eitsim
