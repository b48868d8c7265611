#pragma once

#include "spd/prox.hpp"
#include "spd/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace spd {

/// Deterministic 64-bit generator behind the i.i.d. sample stream.
/// uniform01() maps the raw output to [0, 1) with the usual 53-bit
/// construction so the stream is reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Box-Muller; consumes two uniforms
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

/// Index of one atom of a finite-support distribution.
struct SamplePoint {
  std::size_t atom = 0;
};

/// Finitely supported sampling distribution; every atom has positive mass
/// and the masses sum to 1 (checked to 1e-12 at construction).
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t m) const { return probs_[m]; }

  /// One atom per call, one uniform draw per call.
  SamplePoint sample(Rng& rng) const;

 private:
  std::vector<double> probs_;
};

/// Oracle bundle for the sampled saddle problem: per-sample subgradient of
/// f, prox descriptors for g and p, and the random matrix L. All oracles
/// are pure in (s, x) and immutable after construction.
struct StochasticSaddleProblem {
  Index d = 0;
  Index k = 0;
  std::function<Vector(SamplePoint, const Vector&)> f_subgrad;
  std::function<ProxFunction(SamplePoint)> g_prox;
  std::function<ProxFunction(SamplePoint)> p_prox;
  std::function<Matrix(SamplePoint)> L_op;
};

/// Exact expected counterpart (finite support makes every expectation a
/// finite sum): grad F, the F values, the deterministic G and H* proxes,
/// and the mean operator L_bar = E[L].
struct DeterministicSaddleProblem {
  std::function<Vector(const Vector&)> grad_F;
  std::function<double(const Vector&)> F_value;
  ProxFunction G_prox;
  ProxFunction Hstar_prox;
  Matrix L_bar;

  Index d() const { return L_bar.cols(); }
  Index k() const { return L_bar.rows(); }
};

using ProblemPair = std::pair<StochasticSaddleProblem, DeterministicSaddleProblem>;

/// Markowitz portfolio selection with a target mean return:
///   min E<x, xi>^2  over the simplex,  s.t.  E[xi]' x = c.
/// Per sample: f_subgrad(s, x) = 2 <x, xi_s> xi_s, g = simplex indicator,
/// p(s, lambda) = <lambda, c> (deterministic right-hand side),
/// L(s) = xi_s' as a 1 x d row.
/// Throws when c is not strictly inside the image of the simplex under
/// E[xi]' (qualification condition), with tolerance 1e-9.
ProblemPair markowitz_problem(const std::vector<Vector>& atoms,
                              const std::vector<double>& probs, double c);

/// Linearly constrained QP with per-sample data:
///   f(s, x) = x'Q_s x / 2 + <b_s, x>,  g = primal_set,
///   p(s, lambda) = <lambda, c_s>,      L(s) = L_s,
/// realizing  min F(x) + G(x)  s.t.  L_bar x = c_bar  with stochastic
/// constraint data. Each Q_s must be symmetric PSD.
ProblemPair constrained_qp_problem(const std::vector<Matrix>& Q_atoms,
                                   const std::vector<Vector>& b_atoms,
                                   const std::vector<Matrix>& L_atoms,
                                   const std::vector<Vector>& c_atoms,
                                   const std::vector<double>& probs,
                                   const ProxFunction& primal_set);

/// Wrap an exact problem as a single-atom stochastic one (zero noise).
ProblemPair to_single_atom_problem(const DeterministicSaddleProblem& det);

/// Advisory check of the linear-growth bound ||f_subgrad(s, x)|| <=
/// beta(s) (1 + ||x||): reports, per atom, the largest observed ratio over
/// sampled x in the ball of the given radius (the origin is always probed).
std::vector<double> growth_diagnostic(const StochasticSaddleProblem& problem,
                                      const FiniteDistribution& dist,
                                      std::size_t n_samples, double radius,
                                      std::uint64_t seed = 0);

}  // namespace spd
