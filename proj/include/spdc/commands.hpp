#pragma once

#include <iosfwd>
#include <string>

#include "spdc/config.hpp"
#include "spdc/peaks.hpp"

namespace spdc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInconsistent = 3,
  kSolverFailure = 4,
};

/// Each command writes its primary output to config.output_path when set, else to
/// `out`; diagnostics go to `err`. Exceptions are mapped to exit codes by run().
int cmd_solve_angle(const config::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const config::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_peaks(const config::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const config::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dispersion_table(const config::RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches by subcommand name and converts library errors into exit codes.
int run(const std::string& command, const config::RunConfig& config, std::ostream& out,
        std::ostream& err);

/// Setup described by the config; solves the cut angle when none is given.
phasematching::Setup build_setup(const config::RunConfig& config);

}  // namespace spdc::cli
