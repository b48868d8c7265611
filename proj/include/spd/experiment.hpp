#pragma once

#include "spd/config.hpp"
#include "spd/engine.hpp"
#include "spd/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spd {

struct ExecutionReport {
  std::vector<std::string> files_written;          // one CSV per seed, then the summary
  std::vector<std::pair<std::uint64_t, RunRecord>> records;
  std::map<std::string, double> summary;           // the name=value pairs of summary.txt
  std::optional<PrimalDualPoint> oracle_point;
};

/// Runs every seed of the experiment, attaching the exact-problem residual
/// metrics at each checkpoint, and writes one CSV per seed plus a summary
/// file under the config's output directory. Partial outputs are removed
/// when a run aborts. Byte-identical reruns for identical configs.
ExecutionReport execute(const ExperimentConfig& config);

/// CSV column header for a problem with the given dimensions; the schema is
/// fixed: n, x_*, lambda_*, xbar_*, lambdabar_*, then the averaged-point
/// metrics primal_residual, dual_residual, constraint_gap, dist_to_oracle.
std::string csv_header(Index d, Index k);

}  // namespace spd
