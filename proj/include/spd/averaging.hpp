#pragma once

#include "spd/types.hpp"

namespace spd {

/// Incrementally maintained weighted mean of primal-dual points,
/// mean_n = (sum_k w_k p_k) / (sum_k w_k), in O(d+k) per update.
///
/// The mean is updated through the standard recurrence
///   mean <- mean + (w / W') * (p - mean),   W' = W + w,
/// with Neumaier compensation on the accumulated deltas so the rounding
/// error stays at a few ulps even over 10^6 updates.
class RunningAverage {
 public:
  RunningAverage(Index primal_dim, Index dual_dim)
      : mean_{Vector::Zero(primal_dim), Vector::Zero(dual_dim)},
        comp_{Vector::Zero(primal_dim), Vector::Zero(dual_dim)} {}

  explicit RunningAverage(const PrimalDualPoint& like)
      : RunningAverage(like.primal_dim(), like.dual_dim()) {}

  const PrimalDualPoint& mean() const { return mean_; }
  double total_weight() const { return total_weight_; }
  bool empty() const { return total_weight_ == 0.0; }

  void update(double weight, const PrimalDualPoint& point) {
    require(weight > 0.0, "average_update: weight must be positive");
    require(same_dims(point, mean_), "average_update: dimension mismatch");
    total_weight_ += weight;
    const double alpha = weight / total_weight_;
    add_compensated(mean_.x, comp_.x, alpha * (point.x - mean_.x));
    add_compensated(mean_.lambda, comp_.lambda, alpha * (point.lambda - mean_.lambda));
  }

 private:
  template <typename Delta>
  static void add_compensated(Vector& sum, Vector& comp, const Delta& delta_expr) {
    const Vector delta = delta_expr;
    for (Index i = 0; i < sum.size(); ++i) {
      const double t = sum[i] + delta[i];
      if (std::abs(sum[i]) >= std::abs(delta[i]))
        comp[i] += (sum[i] - t) + delta[i];
      else
        comp[i] += (delta[i] - t) + sum[i];
      sum[i] = t;
    }
    // fold the compensation back in; keeps mean() a plain member read
    for (Index i = 0; i < sum.size(); ++i) {
      const double t = sum[i] + comp[i];
      comp[i] = comp[i] - (t - sum[i]);
      sum[i] = t;
    }
  }

  PrimalDualPoint mean_;
  PrimalDualPoint comp_;
  double total_weight_ = 0.0;
};

inline RunningAverage average_update(RunningAverage avg, double weight,
                                     const PrimalDualPoint& point) {
  avg.update(weight, point);
  return avg;
}

}  // namespace spd
