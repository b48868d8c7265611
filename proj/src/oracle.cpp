#include "spd/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace spd {

ResidualReport fixed_point_residual(const DeterministicSaddleProblem& det,
                                    const PrimalDualPoint& point, double gamma_ref) {
  require(gamma_ref > 0.0, "fixed_point_residual: gamma_ref must be positive");
  require(point.x.size() == det.d() && point.lambda.size() == det.k(),
          "fixed_point_residual: dimension mismatch");
  const Vector grad = det.grad_F(point.x);
  const Vector x_next = prox(det.G_prox, gamma_ref,
                             point.x - gamma_ref * (grad + det.L_bar.transpose() * point.lambda));
  const Vector l_next = prox(det.Hstar_prox, gamma_ref,
                             point.lambda + gamma_ref * (det.L_bar * point.x));

  ResidualReport report;
  report.primal_residual = (point.x - x_next).norm();
  report.dual_residual = (point.lambda - l_next).norm();
  if (const auto* lin = std::get_if<Linear>(&det.Hstar_prox))
    report.constraint_gap = (det.L_bar * point.x - lin->c).norm();
  else if (std::holds_alternative<Zero>(det.Hstar_prox))
    report.constraint_gap = (det.L_bar * point.x).norm();
  report.lagrangian_value = det.F_value(point.x) + value(det.G_prox, point.x) -
                            value(det.Hstar_prox, point.lambda) +
                            point.lambda.dot(det.L_bar * point.x);
  return report;
}

namespace {

// Candidate enumeration for one zoom level. The primal grid respects the
// domain of G: a barycentric grid on the simplex, a product grid clamped
// to a box, the single point of a point indicator, or a plain product
// grid inside the fallback box for full-domain G.
class PrimalGrid {
 public:
  PrimalGrid(const ProxFunction& g, double box_halfwidth, Index d)
      : g_(&g), d_(d), fallback_halfwidth_(box_halfwidth) {}

  template <typename Fn>
  void for_each(const Vector& center, double halfwidth, int cells, Fn&& fn) const {
    if (const auto* pt = std::get_if<IndicatorPoint>(g_)) {
      fn(pt->c);
      return;
    }
    if (std::holds_alternative<IndicatorSimplex>(*g_)) {
      // enumerate the first d-1 barycentric coordinates; the last is forced
      Vector y(d_);
      enumerate_simplex(center, halfwidth, cells, y, 0, 0.0, fn);
      return;
    }
    Vector lo(d_), hi(d_);
    if (const auto* box = std::get_if<IndicatorBox>(g_)) {
      lo = box->lo;
      hi = box->hi;
    } else {
      lo.setConstant(-fallback_halfwidth_);
      hi.setConstant(fallback_halfwidth_);
    }
    Vector y(d_);
    enumerate_box(center, halfwidth, cells, lo, hi, y, 0, fn);
  }

 private:
  template <typename Fn>
  void enumerate_box(const Vector& center, double halfwidth, int cells, const Vector& lo,
                     const Vector& hi, Vector& y, Index axis, Fn&& fn) const {
    if (axis == d_) {
      fn(y);
      return;
    }
    const double a = std::max(center[axis] - halfwidth, lo[axis]);
    const double b = std::min(center[axis] + halfwidth, hi[axis]);
    for (int i = 0; i < cells; ++i) {
      y[axis] = cells == 1 ? a : a + (b - a) * i / (cells - 1);
      enumerate_box(center, halfwidth, cells, lo, hi, y, axis + 1, fn);
    }
  }

  template <typename Fn>
  void enumerate_simplex(const Vector& center, double halfwidth, int cells, Vector& y,
                         Index axis, double partial, Fn&& fn) const {
    if (axis == d_ - 1) {
      const double last = 1.0 - partial;
      if (last < -1e-12 || last > 1.0 + 1e-12) return;
      y[d_ - 1] = std::clamp(last, 0.0, 1.0);
      fn(y);
      return;
    }
    const double a = std::clamp(center[axis] - halfwidth, 0.0, 1.0);
    const double b = std::clamp(center[axis] + halfwidth, 0.0, 1.0);
    for (int i = 0; i < cells; ++i) {
      y[axis] = cells == 1 ? a : a + (b - a) * i / (cells - 1);
      if (partial + y[axis] > 1.0 + 1e-12) continue;
      enumerate_simplex(center, halfwidth, cells, y, axis + 1, partial + y[axis], fn);
    }
  }

  const ProxFunction* g_;
  Index d_;
  double fallback_halfwidth_;
};

}  // namespace

PrimalDualPoint brute_force_saddle(const DeterministicSaddleProblem& det,
                                   double grid_resolution, const BruteForceOptions& opts) {
  const Index d = det.d(), k = det.k();
  if (d > 3 || k > 2) throw std::domain_error("oracle scale exceeded");
  require(grid_resolution > 0.0, "brute_force_saddle: resolution must be positive");
  const int N = std::max(opts.points_per_dim, 3) | 1;  // odd

  PrimalGrid primal_grid(det.G_prox, opts.box_halfwidth, d);
  PrimalDualPoint best{domain_projection(det.G_prox, Vector::Zero(d)), Vector::Zero(k)};
  double best_value = fixed_point_residual(det, best).total();

  Vector primal_center = best.x;
  Vector dual_center = Vector::Zero(k);
  double primal_hw = opts.box_halfwidth;
  if (std::holds_alternative<IndicatorSimplex>(det.G_prox)) {
    primal_hw = 1.0;
  } else if (const auto* box = std::get_if<IndicatorBox>(&det.G_prox)) {
    primal_center = 0.5 * (box->lo + box->hi);
    primal_hw = 0.5 * (box->hi - box->lo).maxCoeff();
  }
  double dual_hw = opts.box_halfwidth;

  PrimalDualPoint candidate{Vector(d), Vector(k)};
  while (true) {
    primal_grid.for_each(primal_center, primal_hw, N, [&](const Vector& x) {
      candidate.x = x;
      // dual product grid over [-hw, hw]^k around the incumbent
      Vector dual_lo = dual_center.array() - dual_hw;
      Vector dual_hi = dual_center.array() + dual_hw;
      std::vector<int> idx(static_cast<std::size_t>(k), 0);
      while (true) {
        for (Index j = 0; j < k; ++j)
          candidate.lambda[j] =
              dual_lo[j] + (dual_hi[j] - dual_lo[j]) * idx[static_cast<std::size_t>(j)] / (N - 1);
        const double r = fixed_point_residual(det, candidate).total();
        if (r < best_value) {
          best_value = r;
          best = candidate;
        }
        Index j = 0;
        for (; j < k; ++j) {
          if (++idx[static_cast<std::size_t>(j)] < N) break;
          idx[static_cast<std::size_t>(j)] = 0;
        }
        if (j == k) break;
      }
    });
    primal_center = best.x;
    dual_center = best.lambda;
    const double cell = 2.0 * std::max(primal_hw, dual_hw) / (N - 1);
    if (cell <= grid_resolution) break;
    // next window spans +-2.5 cells of the current grid around the incumbent
    const double shrink = 5.0 / (N - 1);
    primal_hw = std::max(primal_hw * shrink, 0.5 * grid_resolution);
    dual_hw = std::max(dual_hw * shrink, 0.5 * grid_resolution);
  }
  return best;
}

PrimalDualPoint deterministic_fb_reference(const DeterministicSaddleProblem& det,
                                           const StepSchedule& schedule,
                                           std::size_t n_iters,
                                           std::vector<PrimalDualPoint>* trajectory) {
  if (auto violation = validate_schedule(schedule))
    throw std::invalid_argument("deterministic_fb_reference: invalid schedule: " + *violation);
  PrimalDualPoint state = default_initial_point(det);
  RunningAverage avg(state);
  for (std::size_t n = 1; n <= n_iters; ++n) {
    const double gamma = schedule_gamma(schedule, static_cast<std::int64_t>(n));
    const Vector forward_x =
        state.x - gamma * (det.grad_F(state.x) + det.L_bar.transpose() * state.lambda);
    const Vector forward_lambda = state.lambda + gamma * (det.L_bar * state.x);
    state = {prox(det.G_prox, gamma, forward_x), prox(det.Hstar_prox, gamma, forward_lambda)};
    avg.update(gamma, state);
    if (trajectory) trajectory->push_back(state);
  }
  return avg.empty() ? state : avg.mean();
}

}  // namespace spd
