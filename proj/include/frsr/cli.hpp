#pragma once

#include <filesystem>
#include <iosfwd>

#include "frsr/config.hpp"

namespace frsr {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,      ///< usage or config error
  kExitNoRoot = 2,      ///< a solver found no root
  kExitInvariant = 3,   ///< internal invariant violation or unevaluable scenario
  kExitConclusion = 4,  ///< verify: some proposition conclusion failed
};

/// Writes solve.csv to out_dir. Exit 2 when any scenario has no root.
int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Writes report.json and summary.csv. Exit 0 iff no conclusion fails.
int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Writes compare.csv with the FR vs SR payoff table.
int cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Full command-line entry point; output and diagnostics go to out / err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frsr
