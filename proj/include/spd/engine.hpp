#pragma once

#include "spd/averaging.hpp"
#include "spd/problem.hpp"
#include "spd/schedule.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace spd {

struct RunConfig {
  std::size_t n_iters = 0;
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
  PrimalDualPoint initial_point;
  StepSchedule schedule;
};

struct Checkpoint {
  std::size_t n = 0;
  PrimalDualPoint raw;
  PrimalDualPoint averaged;
  std::map<std::string, double> metrics;
};

struct RunRecord {
  std::vector<Checkpoint> checkpoints;
  PrimalDualPoint final_average;
};

/// Thrown when an iterate goes non-finite or past the divergence guard;
/// carries the offending iteration.
struct EngineAbort : std::runtime_error {
  EngineAbort(std::size_t n, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(n) + ": " + what), iteration(n) {}
  std::size_t iteration;
};

/// Computes extra per-checkpoint metrics from (n, raw point, averaged point).
using MetricsHook =
    std::function<std::map<std::string, double>(std::size_t, const PrimalDualPoint&,
                                                const PrimalDualPoint&)>;

/// Called after every iteration n >= 1 (not just at checkpoints).
using IterationObserver =
    std::function<void(std::size_t, const PrimalDualPoint&, const PrimalDualPoint&)>;

/// One step of the stochastic primal-dual forward-backward iteration:
///   x'      = prox_{gamma g(s,.)} ( x - gamma (f_subgrad(s, x) + L(s)' lambda) )
///   lambda' = prox_{gamma p(s,.)} ( lambda + gamma L(s) x )
/// Both halves use the same sample s, and the dual half uses the primal
/// iterate from before the update.
PrimalDualPoint fb_step(const StochasticSaddleProblem& problem,
                        const PrimalDualPoint& state, SamplePoint s, double gamma);

/// Same update expressed as the forward-backward resolvent step on the
/// product space Hx x Hl:
///   state' = (I + gamma A(s,.))^{-1} ( state - gamma b(s, state) ),
/// with A(s) the subdifferential of g(s, x) + p(s, lambda) and
/// b(s, (x, lambda)) = [f_subgrad(s, x) + L(s)' lambda; -L(s) x].
/// Agrees with fb_step to the last bit.
PrimalDualPoint fb_step_resolvent(const StochasticSaddleProblem& problem,
                                  const PrimalDualPoint& state, SamplePoint s,
                                  double gamma);

/// Feasible default start: the primal domain projection of the origin
/// (the barycenter for the simplex) and lambda = 0.
PrimalDualPoint default_initial_point(const StochasticSaddleProblem& problem);
PrimalDualPoint default_initial_point(const DeterministicSaddleProblem& det);

/// Runs the iteration for n = 1..n_iters, one sample draw per iteration,
/// feeding every (gamma_n, iterate) into the weighted running average.
/// Checkpoints are recorded at n = 0, at multiples of record_every, and at
/// n_iters. Fully deterministic given the seed.
RunRecord run(const StochasticSaddleProblem& problem, const FiniteDistribution& dist,
              const RunConfig& config, const MetricsHook& metrics = {},
              const IterationObserver& observer = {});

struct SgdReductionCheck {
  bool applicable = false;   // g = Zero, p = Zero, L = 0 on every atom
  bool matches = false;      // trajectories agree to 1e-12
  double max_deviation = 0.0;
};

/// With trivial g, p and L the iteration must reduce to plain projected-free
/// stochastic subgradient descent; compares the x-trajectory of run()
/// against an independent SGD recursion driven by the same sample stream.
SgdReductionCheck reduce_to_sgd_check(const StochasticSaddleProblem& problem,
                                      const FiniteDistribution& dist,
                                      const RunConfig& config);

// divergence guard: iterate norms past this abort the run
inline constexpr double kDivergenceGuard = 1e9;

}  // namespace spd
