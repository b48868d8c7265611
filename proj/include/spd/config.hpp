#pragma once

#include "spd/problem.hpp"
#include "spd/schedule.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace spd {

struct MarkowitzSpec {
  std::vector<Vector> atoms;
  std::vector<double> probs;
  double c = 0.0;
};

struct ConstrainedQpSpec {
  Index d = 0;
  Index k = 0;
  std::vector<Matrix> Q_atoms;
  std::vector<Vector> b_atoms;
  std::vector<Matrix> L_atoms;
  std::vector<Vector> c_atoms;
  std::vector<double> probs;
  ProxFunction primal_set = Zero{};
};

struct OracleOptions {
  double box_halfwidth = 10.0;
  double grid_resolution = 1e-4;
  double gamma_ref = 1.0;
};

/// Parsed experiment description: a problem generator with its parameters,
/// the step schedule, and the run/output settings.
struct ExperimentConfig {
  std::variant<MarkowitzSpec, ConstrainedQpSpec> problem;
  StepSchedule schedule;
  std::size_t n_iters = 0;
  std::size_t record_every = 1000;
  std::vector<std::uint64_t> seeds;
  std::string output;
  OracleOptions oracle;

  /// Instantiates the generator (runs all generator-side validation).
  ProblemPair build() const;

  FiniteDistribution distribution() const;
};

struct ConfigError : std::runtime_error {
  ConfigError(int line_, const std::string& what)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what : what),
        line(line_) {}
  int line;
};

/// Strict parse of the key-value config text (see docs/config.md):
/// unknown sections or keys, malformed values, and missing required keys
/// all raise ConfigError with line context.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

}  // namespace spd
