#pragma once

#include <ostream>

#include "greenstream/run_config.hpp"

namespace greenstream::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

/// Writes <out>/schedule.csv and <out>/plan.json for the single configured
/// cap. Returns kExitInfeasible when some day's budget stays negative.
int cmd_plan(const RunConfig& config, std::ostream& log);

/// Writes <out>/sweep.csv, one row per cap, highest cap first.
int cmd_sweep(const RunConfig& config, std::ostream& log);

/// Writes <out>/cdn_days.csv: remote-preferred day counts for every
/// (local, remote) data-center pair of the grid, plus the reduced-day count
/// under the first cap when one is configured.
int cmd_cdn_days(const RunConfig& config, std::ostream& log);

}  // namespace greenstream::cli
