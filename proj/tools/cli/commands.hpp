#pragma once

// Subcommands of the advdiff driver. Each reads its parameters from the
// config, rejects unknown keys, runs, and writes CSV + JSON manifest files
// into `out_dir`. Return values are process exit codes.

#include <filesystem>

#include "config.hpp"

namespace advdiff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAcceptance = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

int cmd_simulate(Config& cfg, const std::filesystem::path& out_dir);
int cmd_profile(Config& cfg, const std::filesystem::path& out_dir);
int cmd_phase(Config& cfg, const std::filesystem::path& out_dir);
int cmd_duhamel(Config& cfg, const std::filesystem::path& out_dir);
int cmd_verify(Config& cfg, const std::filesystem::path& out_dir);

}  // namespace advdiff::cli
