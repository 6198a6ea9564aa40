#pragma once

#include <ostream>

#include "cli/config.hpp"

namespace psesk::cli {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitGapClosed = 4 };

int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_winding(const RunConfig& cfg, std::ostream& out);
int cmd_entropy_surface(const RunConfig& cfg, std::ostream& out);
int cmd_wigner(const RunConfig& cfg, std::ostream& out);
int cmd_solve_potential(const RunConfig& cfg, std::ostream& out);
int cmd_frft_check(const RunConfig& cfg, std::ostream& out);

// Dispatches by cfg.command and maps failures to exit codes, reporting on err.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace psesk::cli
