#include "spd/problem.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>

namespace spd {

namespace {

void check_probs(const std::vector<double>& probs) {
  require(!probs.empty(), "distribution: needs at least one atom");
  double sum = 0.0;
  for (double p : probs) {
    require(p > 0.0, "distribution: every probability must be positive");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "probabilities must sum to 1");
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  check_probs(probs_);
}

SamplePoint FiniteDistribution::sample(Rng& rng) const {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t m = 0; m + 1 < probs_.size(); ++m) {
    acc += probs_[m];
    if (u < acc) return {m};
  }
  return {probs_.size() - 1};
}

ProblemPair markowitz_problem(const std::vector<Vector>& atoms,
                              const std::vector<double>& probs, double c) {
  check_probs(probs);
  require(atoms.size() == probs.size(), "markowitz: atoms/probs size mismatch");
  const Index d = atoms.front().size();
  require(d >= 1, "markowitz: empty return vectors");
  for (const auto& xi : atoms)
    require(xi.size() == d, "markowitz: inconsistent atom dimensions");
  require(c > 0.0, "markowitz: target return c must be positive");

  // L_bar = E[xi'] as a 1 x d row; the image of the simplex under it is
  // the convex hull of the entries, so qualification is an interval check.
  Matrix L_bar = Matrix::Zero(1, d);
  Matrix second_moment = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < atoms.size(); ++m) {
    L_bar.row(0) += probs[m] * atoms[m].transpose();
    second_moment += probs[m] * (atoms[m] * atoms[m].transpose());
  }
  const double lo = L_bar.row(0).minCoeff();
  const double hi = L_bar.row(0).maxCoeff();
  if (!(c > lo + 1e-9 && c < hi - 1e-9))
    throw std::invalid_argument("markowitz: c not in relint of L*simplex");

  auto data = std::make_shared<std::vector<Vector>>(atoms);
  Vector cvec = Vector::Constant(1, c);

  StochasticSaddleProblem sp;
  sp.d = d;
  sp.k = 1;
  sp.f_subgrad = [data](SamplePoint s, const Vector& x) -> Vector {
    const Vector& xi = (*data)[s.atom];
    return 2.0 * x.dot(xi) * xi;
  };
  sp.g_prox = [](SamplePoint) -> ProxFunction { return IndicatorSimplex{}; };
  sp.p_prox = [cvec](SamplePoint) -> ProxFunction { return Linear{cvec}; };
  sp.L_op = [data](SamplePoint s) -> Matrix { return (*data)[s.atom].transpose(); };

  DeterministicSaddleProblem dp;
  dp.grad_F = [second_moment](const Vector& x) -> Vector { return 2.0 * (second_moment * x); };
  dp.F_value = [second_moment](const Vector& x) -> double { return x.dot(second_moment * x); };
  dp.G_prox = IndicatorSimplex{};
  dp.Hstar_prox = Linear{cvec};
  dp.L_bar = L_bar;
  return {std::move(sp), std::move(dp)};
}

ProblemPair constrained_qp_problem(const std::vector<Matrix>& Q_atoms,
                                   const std::vector<Vector>& b_atoms,
                                   const std::vector<Matrix>& L_atoms,
                                   const std::vector<Vector>& c_atoms,
                                   const std::vector<double>& probs,
                                   const ProxFunction& primal_set) {
  check_probs(probs);
  const std::size_t M = probs.size();
  require(Q_atoms.size() == M && b_atoms.size() == M && L_atoms.size() == M &&
              c_atoms.size() == M,
          "constrained_qp: atom list sizes disagree");
  const Index d = Q_atoms.front().rows();
  const Index k = L_atoms.front().rows();
  require(d >= 1 && k >= 1, "constrained_qp: empty dimensions");
  for (std::size_t m = 0; m < M; ++m) {
    require(Q_atoms[m].rows() == d && Q_atoms[m].cols() == d,
            "constrained_qp: Q atom dimension mismatch");
    require(b_atoms[m].size() == d, "constrained_qp: b atom dimension mismatch");
    require(L_atoms[m].rows() == k && L_atoms[m].cols() == d,
            "constrained_qp: L atom dimension mismatch");
    require(c_atoms[m].size() == k, "constrained_qp: c atom dimension mismatch");
    require((Q_atoms[m] - Q_atoms[m].transpose()).lpNorm<Eigen::Infinity>() <= 1e-12,
            "constrained_qp: Q atom not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> es(Q_atoms[m], Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-10, "constrained_qp: Q atom not PSD");
  }
  if (auto pd = dimension_of(primal_set))
    require(*pd == d, "constrained_qp: primal_set dimension mismatch");

  struct Data {
    std::vector<Matrix> Q;
    std::vector<Vector> b;
    std::vector<Matrix> L;
    std::vector<Vector> c;
  };
  auto data = std::make_shared<Data>(Data{Q_atoms, b_atoms, L_atoms, c_atoms});

  Matrix Q_bar = Matrix::Zero(d, d);
  Vector b_bar = Vector::Zero(d);
  Matrix L_bar = Matrix::Zero(k, d);
  Vector c_bar = Vector::Zero(k);
  for (std::size_t m = 0; m < M; ++m) {
    Q_bar += probs[m] * Q_atoms[m];
    b_bar += probs[m] * b_atoms[m];
    L_bar += probs[m] * L_atoms[m];
    c_bar += probs[m] * c_atoms[m];
  }

  StochasticSaddleProblem sp;
  sp.d = d;
  sp.k = k;
  sp.f_subgrad = [data](SamplePoint s, const Vector& x) -> Vector {
    return data->Q[s.atom] * x + data->b[s.atom];
  };
  sp.g_prox = [primal_set](SamplePoint) -> ProxFunction { return primal_set; };
  sp.p_prox = [data](SamplePoint s) -> ProxFunction { return Linear{data->c[s.atom]}; };
  sp.L_op = [data](SamplePoint s) -> Matrix { return data->L[s.atom]; };

  DeterministicSaddleProblem dp;
  dp.grad_F = [Q_bar, b_bar](const Vector& x) -> Vector { return Q_bar * x + b_bar; };
  dp.F_value = [Q_bar, b_bar](const Vector& x) -> double {
    return 0.5 * x.dot(Q_bar * x) + b_bar.dot(x);
  };
  dp.G_prox = primal_set;
  dp.Hstar_prox = Linear{c_bar};
  dp.L_bar = L_bar;
  return {std::move(sp), std::move(dp)};
}

ProblemPair to_single_atom_problem(const DeterministicSaddleProblem& det) {
  StochasticSaddleProblem sp;
  sp.d = det.d();
  sp.k = det.k();
  sp.f_subgrad = [grad = det.grad_F](SamplePoint, const Vector& x) { return grad(x); };
  sp.g_prox = [g = det.G_prox](SamplePoint) { return g; };
  sp.p_prox = [p = det.Hstar_prox](SamplePoint) { return p; };
  sp.L_op = [L = det.L_bar](SamplePoint) { return L; };
  return {std::move(sp), det};
}

std::vector<double> growth_diagnostic(const StochasticSaddleProblem& problem,
                                      const FiniteDistribution& dist,
                                      std::size_t n_samples, double radius,
                                      std::uint64_t seed) {
  require(n_samples >= 1, "growth_diagnostic: n_samples must be >= 1");
  std::vector<double> beta(dist.size(), 0.0);
  const Vector origin = Vector::Zero(problem.d);
  for (std::size_t m = 0; m < dist.size(); ++m)
    beta[m] = problem.f_subgrad({m}, origin).norm();

  Rng rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const SamplePoint s = dist.sample(rng);
    Vector x(problem.d);
    for (Index j = 0; j < x.size(); ++j) x[j] = rng.normal();
    const double nrm = x.norm();
    if (nrm > 0.0)
      x *= radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(problem.d)) / nrm;
    const double ratio = problem.f_subgrad(s, x).norm() / (1.0 + x.norm());
    beta[s.atom] = std::max(beta[s.atom], ratio);
  }
  return beta;
}

}  // namespace spd
