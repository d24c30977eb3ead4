#pragma once

#include <iosfwd>
#include <string>

#include "inspde/runconfig.hpp"

namespace inspde {

/// Exit codes: 0 success, 1 config/validation, 2 solver, 3 I/O.
enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_solver = 2,
    exit_io = 3,
};

/// Executes one CLI subcommand end to end: validate, simulate, tk, zeroth,
/// param or probe. Human-readable progress goes to `out`, failures to `err`;
/// result files land under the configured output directory.
int run_subcommand(const std::string& subcommand, const std::string& config_path,
                   const CliOverrides& overrides, std::ostream& out, std::ostream& err);

} // namespace inspde
