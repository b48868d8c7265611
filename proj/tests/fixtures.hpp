// Shared problem instances for the unit and acceptance suites.
#pragma once

#include "spd/config.hpp"
#include "spd/problem.hpp"

#include <string>
#include <vector>

namespace fixtures {

using spd::Matrix;
using spd::Vector;

inline Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// Two-asset portfolio instance with a unique primal solution (0.5, 0.5):
// the target return 0.75 and the simplex constraint pin x down jointly.
struct MarkowitzFixture {
  std::vector<Vector> atoms{vec2(1.0, 0.0), vec2(0.0, 2.0)};
  std::vector<double> probs{0.5, 0.5};
  double c = 0.75;
  Vector x_star = vec2(0.5, 0.5);

  spd::ProblemPair build() const { return spd::markowitz_problem(atoms, probs, c); }
  spd::FiniteDistribution distribution() const { return spd::FiniteDistribution(probs); }
};

// 3-dimensional box-constrained QP with four atoms and one stochastic
// linear constraint; the saddle point is interior to the box.
struct QpFixture {
  std::vector<Matrix> Q_atoms;
  std::vector<Vector> b_atoms;
  std::vector<Matrix> L_atoms;
  std::vector<Vector> c_atoms;
  std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
  spd::ProxFunction primal_set;

  QpFixture() {
    Matrix q1 = Matrix::Zero(3, 3), q2(3, 3), q3 = Matrix::Zero(3, 3), q4(3, 3);
    q1.diagonal() << 1.0, 2.0, 1.5;
    q2 << 2.5, 0.5, 0.0, 0.5, 1.5, 0.0, 0.0, 0.0, 0.5;
    q3.diagonal() << 0.5, 1.5, 2.0;
    q4 << 1.5, 0.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.5, 1.5;
    Q_atoms = {q1, q2, q3, q4};
    b_atoms = {vec3(-1.0, 0.5, 0.0), vec3(0.5, -1.0, 0.5), vec3(0.0, 0.5, -1.0),
               vec3(-0.5, 0.0, 0.5)};
    for (auto row : {vec3(1.0, 1.0, 1.0), vec3(1.0, 0.5, 1.5), vec3(0.5, 1.5, 1.0),
                     vec3(1.5, 1.0, 0.5)})
      L_atoms.push_back(row.transpose());
    c_atoms = {Vector::Constant(1, 1.2), Vector::Constant(1, 0.9),
               Vector::Constant(1, 1.5), Vector::Constant(1, 1.0)};
    primal_set = spd::IndicatorBox{Vector::Zero(3), Vector::Ones(3)};
  }

  spd::ProblemPair build() const {
    return spd::constrained_qp_problem(Q_atoms, b_atoms, L_atoms, c_atoms, probs, primal_set);
  }
  spd::FiniteDistribution distribution() const { return spd::FiniteDistribution(probs); }
};

// f = 0, g = 0, p = 0, L = 0 in one atom; every point is a fixed point
inline spd::ProblemPair all_zero_problem(spd::Index d = 2, spd::Index k = 1) {
  return spd::constrained_qp_problem(
      {Matrix::Zero(d, d)}, {Vector::Zero(d)}, {Matrix::Zero(k, d)}, {Vector::Zero(k)},
      {1.0}, spd::Zero{});
}

// the criterion-5 experiment written as a config file
inline std::string markowitz_config_text(const std::string& output,
                                         std::size_t n_iters = 200000) {
  return "[problem]\n"
         "generator = markowitz\n"
         "atoms = 1 0 ; 0 2\n"
         "probs = 0.5 0.5\n"
         "c = 0.75\n"
         "\n"
         "[run]\n"
         "n_iters = " + std::to_string(n_iters) + "\n"
         "record_every = " + std::to_string(std::min<std::size_t>(1000, n_iters)) + "\n"
         "seeds = 1 2 3 4 5 6 7 8 9 10\n"
         "output = " + output + "\n";
}

}  // namespace fixtures
