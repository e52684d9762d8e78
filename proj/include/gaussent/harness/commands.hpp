#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gaussent/harness/config.hpp"

namespace gaussent::harness {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad flags, config or parameters
  kExitIo = 2,          // output could not be written
  kExitUnphysical = 3,  // output written but a state failed check_physical
  kExitNumerical = 4,   // integrator or linear algebra failure
};

struct CommandOutput {
  std::string csv;
  std::string records_csv;  // trajectories only, when a record path is set
  bool physical = true;
};

/// Columns: t, kappa_sq_t, theta, eta_t, g11sd, g22sd, g33sd, g44sd,
/// delta, geof, logneg, geof_applicable.
CommandOutput cmd_evolve(const RunConfig& config);

/// One row per grid cell (first axis slowest): the axis values, the resolved
/// alpha0, eta, kappa_sq, omega, t_end, the final delta/geof/logneg, the
/// GEoF and log-neg maxima with their times, and the entanglement death
/// time t and eta t (empty when entanglement never dies).
CommandOutput cmd_sweep(const RunConfig& config);

/// One row per trajectory (kind=trajectory) with its final conditional
/// means, then one kind=summary row with the ensemble statistics of <p1(T)>.
/// Columns: kind, index, seed, t, x1, p1, x2, p2, var_p, mean_p, stderr_var, gamma33_sd.
CommandOutput cmd_trajectories(const RunConfig& config);

/// Runs the command selected by config.mode, writes the CSV and returns an
/// ExitCode. Messages go to `err`.
int run(const RunConfig& config, std::ostream& err);

}  // namespace gaussent::harness
