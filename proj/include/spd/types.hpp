#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace spd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Joint primal-dual state (x, lambda) on Hx x Hl.
struct PrimalDualPoint {
  Vector x;
  Vector lambda;

  Index primal_dim() const { return x.size(); }
  Index dual_dim() const { return lambda.size(); }

  bool allFinite() const { return x.allFinite() && lambda.allFinite(); }

  double squaredNorm() const { return x.squaredNorm() + lambda.squaredNorm(); }
  double norm() const { return std::sqrt(squaredNorm()); }
};

inline PrimalDualPoint operator-(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  return {a.x - b.x, a.lambda - b.lambda};
}

inline bool same_dims(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  return a.x.size() == b.x.size() && a.lambda.size() == b.lambda.size();
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace spd
