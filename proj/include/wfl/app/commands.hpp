#ifndef WFL_APP_COMMANDS_HPP
#define WFL_APP_COMMANDS_HPP

#include <string>

#include "wfl/app/config.hpp"
#include "wfl/app/output.hpp"
#include "wfl/convergence.hpp"
#include "wfl/trajectory.hpp"

namespace wfl::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Table builders behind the subcommands. They compute everything in memory
// so a command either writes all of its files or none.

/// One row for the configured model, with the inversion-based oracle for mu.
CsvTable coeffs_table(const ExperimentConfig& config);
std::string coeffs_json(const ExperimentConfig& config);

/// mu(theta) for the slanted model or mu(theta_lim) for the angular one.
CsvTable sweep_theta_table(const ExperimentConfig& config);

CsvTable limit_table(const Trajectory& trajectory);
CsvTable viscous_table(const Trajectory& trajectory);
CsvTable convergence_table(const SweepReport& report);

/// With the nap, against the nap (flipped rest angle), and the rigid rod
/// pushed backwards.
CsvTable nap_table(const ExperimentConfig& config);

CsvTable perceived_table(const ExperimentConfig& config);
CsvTable k_table(const ExperimentConfig& config);

/// Entry point of the `wfl` executable. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace wfl::app

#endif
