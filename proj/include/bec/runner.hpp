#pragma once

#include <string>

#include "bec/config.hpp"

namespace bec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

const char* code_version();

/// Each command writes into config.out_dir (created if missing) and returns an
/// exit code. Validation, config and IO errors are written to error.json there.
int cmd_run(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_continuation(const RunConfig& config);
int cmd_steady(const RunConfig& config);
int cmd_sweep(const RunConfig& config);

/// Dispatches by subcommand name: run | verify | continuation | steady | sweep.
int run_command(const std::string& command, const RunConfig& config);

/// Loads the config at `path`, applies the output override and dispatches.
int run_command_file(const std::string& command, const std::string& path, const std::string& out_dir = {});

}  // namespace bec
