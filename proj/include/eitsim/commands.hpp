#pragma once

#include <string>

#include "eitsim/config.hpp"

namespace eitsim {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalError = 2;
inline constexpr int kExitConvergenceFlag = 3;

// Dispatches spectra|steady|g2tau|sweep|blockade|check. Writes the command's
// CSV plus <out>.manifest.json and returns an exit code.
int run_command(const RunConfig& cfg, const std::string& command);

}  // namespace eitsim
