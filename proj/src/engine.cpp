#include "spd/engine.hpp"

#include <cmath>

namespace spd {

namespace {

void check_state(const StochasticSaddleProblem& problem, const PrimalDualPoint& state) {
  require(state.x.size() == problem.d && state.lambda.size() == problem.k,
          "fb_step: state dimensions do not match problem");
}

}  // namespace

PrimalDualPoint fb_step(const StochasticSaddleProblem& problem,
                        const PrimalDualPoint& state, SamplePoint s, double gamma) {
  require(gamma > 0.0, "fb_step: gamma must be positive");
  check_state(problem, state);
  const Matrix Ls = problem.L_op(s);
  const Vector forward_x =
      state.x - gamma * (problem.f_subgrad(s, state.x) + Ls.transpose() * state.lambda);
  const Vector forward_lambda = state.lambda + gamma * (Ls * state.x);
  if (!forward_x.allFinite() || !forward_lambda.allFinite())
    throw std::runtime_error("non-finite forward step");
  return {prox(problem.g_prox(s), gamma, forward_x),
          prox(problem.p_prox(s), gamma, forward_lambda)};
}

PrimalDualPoint fb_step_resolvent(const StochasticSaddleProblem& problem,
                                  const PrimalDualPoint& state, SamplePoint s,
                                  double gamma) {
  require(gamma > 0.0, "fb_step: gamma must be positive");
  check_state(problem, state);
  const Index d = problem.d, k = problem.k;
  const Matrix Ls = problem.L_op(s);

  // forward half on the product space: w = state - gamma * b(s, state)
  Vector b(d + k);
  b.head(d) = problem.f_subgrad(s, state.x) + Ls.transpose() * state.lambda;
  b.tail(k) = -(Ls * state.x);
  Vector w(d + k);
  w.head(d) = state.x - gamma * b.head(d);
  w.tail(k) = state.lambda - gamma * b.tail(k);

  // backward half: the resolvent of A(s) = subdiff of g(s,x) + p(s,lambda)
  // splits across the product structure into the two proximity operators
  return {prox(problem.g_prox(s), gamma, w.head(d)),
          prox(problem.p_prox(s), gamma, w.tail(k))};
}

PrimalDualPoint default_initial_point(const StochasticSaddleProblem& problem) {
  return {domain_projection(problem.g_prox({0}), Vector::Zero(problem.d)),
          Vector::Zero(problem.k)};
}

PrimalDualPoint default_initial_point(const DeterministicSaddleProblem& det) {
  return {domain_projection(det.G_prox, Vector::Zero(det.d())), Vector::Zero(det.k())};
}

RunRecord run(const StochasticSaddleProblem& problem, const FiniteDistribution& dist,
              const RunConfig& config, const MetricsHook& metrics,
              const IterationObserver& observer) {
  if (auto violation = validate_schedule(config.schedule))
    throw std::invalid_argument("run: invalid schedule: " + *violation);
  require(config.initial_point.allFinite(), "run: initial point not finite");
  check_state(problem, config.initial_point);
  if (config.n_iters > 0)
    require(config.record_every >= 1 && config.record_every <= config.n_iters,
            "run: record_every must be in [1, n_iters]");

  RunRecord record;
  PrimalDualPoint state = config.initial_point;
  RunningAverage avg(state);

  auto push_checkpoint = [&](std::size_t n, const PrimalDualPoint& averaged) {
    Checkpoint cp{n, state, averaged, {}};
    if (metrics) cp.metrics = metrics(n, state, averaged);
    record.checkpoints.push_back(std::move(cp));
  };
  push_checkpoint(0, state);  // n = 0: the average is taken as the start point

  Rng rng(config.seed);
  for (std::size_t n = 1; n <= config.n_iters; ++n) {
    const double gamma = schedule_gamma(config.schedule, static_cast<std::int64_t>(n));
    const SamplePoint s = dist.sample(rng);  // one draw, used by all four oracles
    try {
      state = fb_step(problem, state, s, gamma);
    } catch (const std::runtime_error& e) {
      throw EngineAbort(n, e.what());
    }
    if (!state.allFinite()) throw EngineAbort(n, "non-finite iterate");
    if (state.norm() > kDivergenceGuard)
      throw EngineAbort(n, "iterate norm exceeds divergence guard 1e9");
    avg.update(gamma, state);
    if (observer) observer(n, state, avg.mean());
    if (n % config.record_every == 0 || n == config.n_iters)
      push_checkpoint(n, avg.mean());
  }
  record.final_average = record.checkpoints.back().averaged;
  return record;
}

SgdReductionCheck reduce_to_sgd_check(const StochasticSaddleProblem& problem,
                                      const FiniteDistribution& dist,
                                      const RunConfig& config) {
  SgdReductionCheck result;
  for (std::size_t m = 0; m < dist.size(); ++m) {
    const SamplePoint s{m};
    if (!std::holds_alternative<Zero>(problem.g_prox(s))) return result;
    if (!std::holds_alternative<Zero>(problem.p_prox(s))) return result;
    if (!problem.L_op(s).isZero(0.0)) return result;
  }
  result.applicable = true;

  // independent plain SGD recursion driven by the same sample stream
  std::vector<Vector> sgd_path;
  sgd_path.reserve(config.n_iters);
  {
    Rng rng(config.seed);
    Vector x = config.initial_point.x;
    for (std::size_t n = 1; n <= config.n_iters; ++n) {
      const double gamma = schedule_gamma(config.schedule, static_cast<std::int64_t>(n));
      const SamplePoint s = dist.sample(rng);
      x = x - gamma * problem.f_subgrad(s, x);
      sgd_path.push_back(x);
    }
  }

  double max_dev = 0.0;
  auto compare = [&](std::size_t n, const PrimalDualPoint& raw, const PrimalDualPoint&) {
    const double dev = (raw.x - sgd_path[n - 1]).lpNorm<Eigen::Infinity>();
    max_dev = std::max(max_dev, dev);
  };
  run(problem, dist, config, {}, compare);

  result.max_deviation = max_dev;
  result.matches = max_dev <= 1e-12;
  return result;
}

}  // namespace spd
