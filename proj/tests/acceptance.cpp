// Acceptance suite: each criterion prints one [PASS]/[FAIL] line.
// Usage: acceptance [criterion numbers...]; no arguments runs all nine.

#include "spd/experiment.hpp"
#include "spd/oracle.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace spd;
namespace fs = std::filesystem;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// ---------------------------------------------------------------- criterion 1

bool criterion_prox(Check& c) {
  std::mt19937 rng(1001);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const Index d = 3;
  const std::vector<ProxFunction> zoo = {
      Zero{},
      Linear{testref::random_vector(rng, d, 2.0)},
      Quadratic{testref::random_spd(rng, d), testref::random_vector(rng, d, 1.0)},
      IndicatorSimplex{},
      IndicatorBox{-Vector::Ones(d), 2.0 * Vector::Ones(d)},
      IndicatorPoint{testref::random_vector(rng, d, 2.0)},
      L1{0.7}};

  double worst_margin = 0.0;
  for (const ProxFunction& h : zoo) {
    for (int rep = 0; rep < 400; ++rep) {
      const double gamma = std::pow(10.0, -2.0 + 3.0 * unif01(rng));  // [0.01, 10]
      const Vector v = testref::random_vector(rng, d, 5.0);
      const Vector y = prox(h, gamma, v);
      const double fy = testref::prox_objective(h, gamma, v, y);
      for (int cand = 0; cand < 1000; ++cand) {
        const Vector z = testref::random_in_domain(h, rng, d);
        worst_margin =
            std::min(worst_margin, testref::prox_objective(h, gamma, v, z) - fy);
      }
    }
  }
  c.expect(worst_margin >= -1e-8,
           "prox beaten by a candidate, margin " + std::to_string(worst_margin));

  double worst_grid = 0.0;
  for (Index dim : {2, 3}) {
    for (int rep = 0; rep < 20; ++rep) {
      const Vector v = testref::random_vector(rng, dim, 2.0);
      const Vector grid = testref::simplex_grid_projection(v);
      worst_grid = std::max(worst_grid, (project_simplex(v) - grid).norm());
    }
  }
  c.expect(worst_grid <= 1e-3,
           "simplex projection vs grid search off by " + std::to_string(worst_grid));
  return c.ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_resolvent(Check& c) {
  std::mt19937 rng(2002);
  std::vector<std::pair<ProblemPair, std::size_t>> problems;  // pair + atom count
  const fixtures::MarkowitzFixture mfx;
  problems.emplace_back(mfx.build(), 2);
  problems.emplace_back(markowitz_problem(
                            {fixtures::vec3(1.0, 0.2, 0.1), fixtures::vec3(0.1, 1.5, 0.3),
                             fixtures::vec3(0.4, 0.2, 2.0)},
                            {0.3, 0.4, 0.3}, 0.8),
                        3);
  const fixtures::QpFixture qfx;
  problems.emplace_back(qfx.build(), 4);
  problems.emplace_back(constrained_qp_problem(qfx.Q_atoms, qfx.b_atoms, qfx.L_atoms,
                                               qfx.c_atoms, qfx.probs, IndicatorSimplex{}),
                        4);
  problems.emplace_back(constrained_qp_problem(qfx.Q_atoms, qfx.b_atoms, qfx.L_atoms,
                                               qfx.c_atoms, qfx.probs, L1{0.4}),
                        4);

  double worst = 0.0;
  for (const auto& [pair, atom_count] : problems) {
    const StochasticSaddleProblem& problem = pair.first;
    for (int rep = 0; rep < 20; ++rep) {
      const PrimalDualPoint state{testref::random_vector(rng, problem.d, 3.0),
                                  testref::random_vector(rng, problem.k, 3.0)};
      const SamplePoint s{static_cast<std::size_t>(rng() % atom_count)};
      for (double gamma : {0.01, 1.0}) {
        const PrimalDualPoint a = fb_step(problem, state, s, gamma);
        const PrimalDualPoint b = fb_step_resolvent(problem, state, s, gamma);
        worst = std::max({worst, (a.x - b.x).lpNorm<Eigen::Infinity>(),
                          (a.lambda - b.lambda).lpNorm<Eigen::Infinity>()});
      }
    }
  }
  c.expect(worst <= 1e-12, "resolvent deviation " + std::to_string(worst));
  return c.ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_sgd(Check& c) {
  const fixtures::MarkowitzFixture fx;
  auto atoms = fx.atoms;
  StochasticSaddleProblem problem;
  problem.d = 2;
  problem.k = 1;
  problem.f_subgrad = [atoms](SamplePoint s, const Vector& x) -> Vector {
    return 2.0 * x.dot(atoms[s.atom]) * atoms[s.atom];
  };
  problem.g_prox = [](SamplePoint) -> ProxFunction { return Zero{}; };
  problem.p_prox = [](SamplePoint) -> ProxFunction { return Zero{}; };
  problem.L_op = [](SamplePoint) -> Matrix { return Matrix::Zero(1, 2); };

  RunConfig rc;
  rc.n_iters = 1000;
  rc.seed = 33;
  rc.record_every = 1000;
  rc.initial_point = {fixtures::vec2(0.7, -0.2), Vector::Zero(1)};
  const SgdReductionCheck check = reduce_to_sgd_check(problem, fx.distribution(), rc);
  c.expect(check.applicable, "reduction preconditions not detected");
  c.expect(check.max_deviation <= 1e-12,
           "sgd deviation " + std::to_string(check.max_deviation));
  return c.ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_linear_dual(Check& c) {
  std::mt19937 rng(4004);
  const Index d = 3, k = 2;
  const std::size_t M = 4;
  std::vector<Matrix> Ls;
  std::vector<Vector> cs;
  for (std::size_t m = 0; m < M; ++m) {
    Matrix L(k, d);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < d; ++j) L(i, j) = testref::random_vector(rng, 1, 1.0)[0];
    Ls.push_back(L);
    cs.push_back(testref::random_vector(rng, k, 1.0));
  }
  StochasticSaddleProblem problem;
  problem.d = d;
  problem.k = k;
  problem.f_subgrad = [](SamplePoint, const Vector& x) { return Vector(Vector::Zero(3)); };
  problem.g_prox = [](SamplePoint) -> ProxFunction { return Zero{}; };
  problem.p_prox = [cs](SamplePoint s) -> ProxFunction { return Linear{cs[s.atom]}; };
  problem.L_op = [Ls](SamplePoint s) -> Matrix { return Ls[s.atom]; };

  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  double worst = 0.0;
  for (int step = 0; step < 1000; ++step) {
    const PrimalDualPoint state{testref::random_vector(rng, d, 1.0),
                                testref::random_vector(rng, k, 1.0)};
    const double gamma = 1e-3 + unif01(rng);
    const SamplePoint s{static_cast<std::size_t>(rng() % M)};
    const PrimalDualPoint out = fb_step(problem, state, s, gamma);
    const Vector expected = state.lambda + gamma * (Ls[s.atom] * state.x - cs[s.atom]);
    worst = std::max(worst, (out.lambda - expected).lpNorm<Eigen::Infinity>());
  }
  c.expect(worst <= 1e-14, "dual specialization deviation " + std::to_string(worst));
  return c.ok;
}

// ------------------------------------------------------- criteria 5, 6, and 7

struct ConvergenceStats {
  std::vector<double> metric_final;   // per seed
  std::vector<double> metric_early;
  std::vector<double> second_final;
  std::vector<double> second_early;
  int decreased = 0;
  double feasibility_violation = 0.0;  // criterion 7, over all iterations
};

ConvergenceStats markowitz_runs(bool with_observer) {
  const fixtures::MarkowitzFixture fx;
  const auto [problem, det] = fx.build();
  ConvergenceStats stats;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig rc;
    rc.n_iters = 200000;
    rc.seed = seed;
    rc.record_every = 1000;
    rc.initial_point = default_initial_point(problem);
    IterationObserver observer;
    if (with_observer)
      observer = [&stats](std::size_t, const PrimalDualPoint& raw,
                          const PrimalDualPoint& avg) {
        const double v = std::max(
            {std::abs(raw.x.sum() - 1.0), -raw.x.minCoeff(),
             std::abs(avg.x.sum() - 1.0), -avg.x.minCoeff()});
        stats.feasibility_violation = std::max(stats.feasibility_violation, v);
      };
    const RunRecord record = run(problem, fx.distribution(), rc, {}, observer);

    const PrimalDualPoint& early = record.checkpoints[1].averaged;  // n = 1000
    const PrimalDualPoint& final_avg = record.final_average;
    const double err_e = (early.x - fx.x_star).norm();
    const double err_f = (final_avg.x - fx.x_star).norm();
    const double gap_e = fixed_point_residual(det, early).constraint_gap;
    const double gap_f = fixed_point_residual(det, final_avg).constraint_gap;
    stats.metric_final.push_back(err_f);
    stats.metric_early.push_back(err_e);
    stats.second_final.push_back(gap_f);
    stats.second_early.push_back(gap_e);
    if (err_f < err_e && gap_f < gap_e) ++stats.decreased;
  }
  return stats;
}

bool criterion_markowitz(Check& c) {
  const ConvergenceStats stats = markowitz_runs(false);
  const double med_err = median(stats.metric_final);
  const double med_gap = median(stats.second_final);
  c.expect(med_err <= 1e-2, "median |xbar - x*| = " + std::to_string(med_err));
  c.expect(med_gap <= 1e-2, "median constraint gap = " + std::to_string(med_gap));
  c.expect(stats.decreased >= 9,
           "metrics decreased for only " + std::to_string(stats.decreased) + "/10 seeds");
  return c.ok;
}

bool criterion_qp(Check& c) {
  const fixtures::QpFixture fx;
  const auto [problem, det] = fx.build();
  const PrimalDualPoint saddle = brute_force_saddle(det, 1e-4);
  c.expect(fixed_point_residual(det, saddle).total() <= 1e-3,
           "oracle saddle not certified");

  std::vector<double> res_final, res_early;
  int decreased = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig rc;
    rc.n_iters = 200000;
    rc.seed = seed;
    rc.record_every = 1000;
    rc.initial_point = default_initial_point(problem);
    const RunRecord record = run(problem, fx.distribution(), rc);
    const double r_e = fixed_point_residual(det, record.checkpoints[1].averaged).total();
    const double r_f = fixed_point_residual(det, record.final_average).total();
    res_final.push_back(r_f);
    res_early.push_back(r_e);
    if (r_f < r_e) ++decreased;
  }
  const double med = median(res_final);
  c.expect(med <= 5e-2, "median final residual = " + std::to_string(med));
  c.expect(decreased >= 9,
           "residual decreased for only " + std::to_string(decreased) + "/10 seeds");
  return c.ok;
}

bool criterion_feasibility(Check& c) {
  const ConvergenceStats stats = markowitz_runs(true);
  c.expect(stats.feasibility_violation <= 1e-12,
           "simplex violation " + std::to_string(stats.feasibility_violation));
  return c.ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_schedule(Check& c) {
  for (double a : {-1.0, 0.0, 0.3, 0.5, 0.5 + 1e-9, 0.51, 0.75, 0.999, 1.0}) {
    const bool accepted = !validate_schedule({1.0, a, 0});
    const bool should = a > 0.5 && a <= 1.0;
    c.expect(accepted == should, "exponent " + std::to_string(a) + " misclassified");
  }
  for (double a : {1.0 + 1e-9, 1.2, 2.0})
    c.expect(validate_schedule({1.0, a, 0}).has_value(),
             "exponent " + std::to_string(a) + " wrongly accepted");
  c.expect(validate_schedule({0.0, 0.75, 0}).has_value(), "gamma0 = 0 wrongly accepted");
  c.expect(validate_schedule({1.0, 0.75, -1}).has_value(), "offset < 0 wrongly accepted");

  const StepSchedule witness{1.0, 0.75, 0};
  double sum_1e3 = 0.0, sum_1e6 = 0.0, sq_1e5 = 0.0, sq_1e6 = 0.0;
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    const double g = schedule_gamma(witness, n);
    sum_1e6 += g;
    sq_1e6 += g * g;
    if (n <= 1000) sum_1e3 += g;
    if (n <= 100000) sq_1e5 += g * g;
  }
  c.expect(sum_1e6 >= 5.0 * sum_1e3, "divergence witness failed");
  c.expect(sq_1e6 - sq_1e5 <= 0.01 * sq_1e5, "convergence witness failed");
  return c.ok;
}

// ---------------------------------------------------------------- criterion 9

std::string cli_path;

bool criterion_determinism(Check& c) {
  std::mt19937_64 rng(std::random_device{}());
  const fs::path dir =
      fs::temp_directory_path() / ("spd_accept9_" + std::to_string(rng()));
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "markowitz.cfg";
  std::ofstream(cfg_path) << fixtures::markowitz_config_text((dir / "out").string());

  const std::string cmd = cli_path + " run " + cfg_path.string() + " >/dev/null 2>&1";
  c.expect(std::system(cmd.c_str()) == 0, "first cli run failed");
  std::map<std::string, std::string> first;
  for (const auto& entry : fs::directory_iterator(dir / "out"))
    first[entry.path().filename().string()] = slurp(entry.path());
  c.expect(first.size() == 11, "expected 10 CSVs and a summary");

  c.expect(std::system(cmd.c_str()) == 0, "second cli run failed");
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(dir / "out")) {
    ++seen;
    const auto it = first.find(entry.path().filename().string());
    c.expect(it != first.end() && it->second == slurp(entry.path()),
             "output differs: " + entry.path().filename().string());
  }
  c.expect(seen == first.size(), "file sets differ between runs");
  fs::remove_all(dir);
  return c.ok;
}

struct Criterion {
  int number;
  const char* label;
  bool (*fn)(Check&);
};

const Criterion kCriteria[] = {
    {1, "prox optimality and simplex projection vs grid search", criterion_prox},
    {2, "resolvent form agrees with the direct update to 1e-12", criterion_resolvent},
    {3, "reduces to stochastic gradient descent when g, p, L are trivial", criterion_sgd},
    {4, "linear dual integrand specializes the dual update", criterion_linear_dual},
    {5, "markowitz averaged iterates reach the saddle point", criterion_markowitz},
    {6, "stochastic-constraint qp averaged residual converges", criterion_qp},
    {7, "all markowitz iterates stay on the simplex to 1e-12", criterion_feasibility},
    {8, "step-size hypotheses validated exactly", criterion_schedule},
    {9, "cli reruns are byte-identical", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  cli_path = SPD_CLI_PATH;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli_path = argv[++i];
      continue;
    }
    selected.push_back(std::atoi(arg.c_str()));
  }

  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.number) == selected.end())
      continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
      ok = criterion.fn(check);
    } catch (const std::exception& e) {
      error = e.what();
      check.ok = false;
      check.detail = "exception: " + error;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", check.ok ? "PASS" : "FAIL",
                criterion.number, criterion.label, secs, check.ok ? "" : " -- ",
                check.ok ? "" : check.detail.c_str());
    std::fflush(stdout);
    if (!check.ok) ++failures;
    (void)ok;
  }
  return failures;
}
