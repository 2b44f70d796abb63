#pragma once

#include <ostream>
#include <string>

#include "dyncon/adversary.hpp"
#include "dyncon/report_io.hpp"

namespace dyncon {

/// Process exit codes.
enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs one trial; writes the verdict to `out` and to rc.out_verdict, the
/// trace to rc.out_trace when set.
int cmd_run(const RunConfig& rc, std::ostream& out, std::ostream& err);

/// Seeds rc.trial.seed + i for i < trials; writes the summary JSON.
int cmd_sweep(const RunConfig& rc, int trials, bool parallel, std::ostream& out, std::ostream& err);

/// Membership report for ◊STABLE_D(x); exit 0 iff member.
int cmd_validate(const std::string& sequence_file, int diameter, int x, const std::string& out_path,
                 std::ostream& out, std::ostream& err);

/// Writes the scenario to `out_path`; pairs go to out_path with .sigma1 and
/// .sigma2 inserted before the extension.
int cmd_scenario(const std::string& name, const ScenarioParams& params, const std::string& out_path,
                 std::ostream& out, std::ostream& err);

/// Full command line, subcommand first.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dyncon
