#pragma once

#include "spd/engine.hpp"
#include "spd/problem.hpp"
#include "spd/schedule.hpp"

#include <vector>

namespace spd {

/// Residuals of the saddle-point inclusions
///   0 in grad F(x) + subdiff G(x) + L' lambda
///   0 in -L x + subdiff H*(lambda)
/// measured through the prox fixed-point characterization: both vanish
/// exactly on the saddle set and only there.
struct ResidualReport {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double constraint_gap = 0.0;   // ||L_bar x - c_bar|| when H* is linear, else 0
  double lagrangian_value = 0.0; // F(x) + G(x) - H*(lambda) + <L_bar x, lambda>

  double total() const { return std::hypot(primal_residual, dual_residual); }
};

/// primal_residual = ||x - prox_{gamma G}(x - gamma (grad F(x) + L' lambda))||,
/// dual_residual   = ||lambda - prox_{gamma H*}(lambda + gamma L x)||.
/// The zero set is independent of gamma_ref; only the scaling changes.
ResidualReport fixed_point_residual(const DeterministicSaddleProblem& det,
                                    const PrimalDualPoint& point,
                                    double gamma_ref = 1.0);

struct BruteForceOptions {
  double box_halfwidth = 10.0;  // dual search box, and primal box for full-domain G
  int points_per_dim = 13;      // odd, so the incumbent stays on the next grid
};

/// Desk-scale reference for the saddle set: zooming grid search over the
/// primal domain and a bounded dual box, minimizing the fixed-point
/// residual, refined until the cell size drops below grid_resolution.
/// Requires d <= 3 and k <= 2 ("oracle scale exceeded" otherwise).
PrimalDualPoint brute_force_saddle(const DeterministicSaddleProblem& det,
                                   double grid_resolution,
                                   const BruteForceOptions& opts = {});

/// The same forward-backward recursion run with the exact expected
/// operators (a zero-variance problem); returns the weighted average.
/// When trajectory is non-null it receives the raw iterates x_1..x_n.
PrimalDualPoint deterministic_fb_reference(const DeterministicSaddleProblem& det,
                                           const StepSchedule& schedule,
                                           std::size_t n_iters,
                                           std::vector<PrimalDualPoint>* trajectory = nullptr);

}  // namespace spd
