#include "spd/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace spd {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void append_vector(std::string& line, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    line += ',';
    line += fmt(v[i]);
  }
}

void write_csv(const std::string& path, const RunRecord& record, Index d, Index k) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << csv_header(d, k) << '\n';
  for (const auto& cp : record.checkpoints) {
    std::string line = std::to_string(cp.n);
    append_vector(line, cp.raw.x);
    append_vector(line, cp.raw.lambda);
    append_vector(line, cp.averaged.x);
    append_vector(line, cp.averaged.lambda);
    for (const char* key : {"primal_residual", "dual_residual", "constraint_gap",
                            "dist_to_oracle"}) {
      line += ',';
      line += fmt(cp.metrics.at(key));
    }
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

std::string generator_name(const ExperimentConfig& config) {
  return std::holds_alternative<MarkowitzSpec>(config.problem) ? "markowitz"
                                                               : "constrained_qp";
}

}  // namespace

std::string csv_header(Index d, Index k) {
  std::string h = "n";
  auto block = [&](const std::string& stem, Index count) {
    for (Index i = 0; i < count; ++i) h += "," + stem + "_" + std::to_string(i);
  };
  block("x", d);
  block("lambda", k);
  block("xbar", d);
  block("lambdabar", k);
  h += ",primal_residual,dual_residual,constraint_gap,dist_to_oracle";
  return h;
}

ExecutionReport execute(const ExperimentConfig& config) {
  const auto [problem, det] = config.build();
  ExecutionReport report;

  if (det.d() <= 3 && det.k() <= 2)
    report.oracle_point = brute_force_saddle(
        det, config.oracle.grid_resolution,
        BruteForceOptions{config.oracle.box_halfwidth, 13});

  const double gamma_ref = config.oracle.gamma_ref;
  MetricsHook metrics = [&](std::size_t, const PrimalDualPoint& raw,
                            const PrimalDualPoint& averaged) {
    std::map<std::string, double> m;
    const ResidualReport avg_res = fixed_point_residual(det, averaged, gamma_ref);
    const ResidualReport raw_res = fixed_point_residual(det, raw, gamma_ref);
    m["primal_residual"] = avg_res.primal_residual;
    m["dual_residual"] = avg_res.dual_residual;
    m["constraint_gap"] = avg_res.constraint_gap;
    m["lagrangian_value"] = avg_res.lagrangian_value;
    m["raw_primal_residual"] = raw_res.primal_residual;
    m["raw_dual_residual"] = raw_res.dual_residual;
    m["raw_constraint_gap"] = raw_res.constraint_gap;
    m["dist_to_oracle"] = report.oracle_point
                              ? (averaged - *report.oracle_point).norm()
                              : std::numeric_limits<double>::quiet_NaN();
    return m;
  };

  fs::create_directories(config.output);
  auto cleanup = [&report]() {
    std::error_code ec;
    for (const auto& path : report.files_written) fs::remove(path, ec);
  };

  try {
    for (const std::uint64_t seed : config.seeds) {
      RunConfig rc;
      rc.n_iters = config.n_iters;
      rc.seed = seed;
      rc.record_every = config.record_every;
      rc.initial_point = default_initial_point(problem);
      rc.schedule = config.schedule;
      RunRecord record = run(problem, config.distribution(), rc, metrics);
      const std::string path =
          (fs::path(config.output) / ("seed_" + std::to_string(seed) + ".csv")).string();
      write_csv(path, record, problem.d, problem.k);
      report.files_written.push_back(path);
      report.records.emplace_back(seed, std::move(record));
    }

    auto& summary = report.summary;
    summary["d"] = static_cast<double>(problem.d);
    summary["k"] = static_cast<double>(problem.k);
    summary["n_iters"] = static_cast<double>(config.n_iters);
    summary["record_every"] = static_cast<double>(config.record_every);
    summary["seeds"] = static_cast<double>(config.seeds.size());
    summary["gamma0"] = config.schedule.gamma0;
    summary["exponent"] = config.schedule.exponent;
    summary["offset"] = static_cast<double>(config.schedule.offset);
    summary["oracle_available"] = report.oracle_point ? 1.0 : 0.0;
    for (const char* key : {"primal_residual", "dual_residual", "constraint_gap",
                            "dist_to_oracle"}) {
      std::vector<double> finals;
      for (const auto& [seed, record] : report.records)
        finals.push_back(record.checkpoints.back().metrics.at(key));
      summary[std::string("median_final_") + key] = median(std::move(finals));
    }

    const std::string summary_path = (fs::path(config.output) / "summary.txt").string();
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + summary_path);
    out << "generator=" << generator_name(config) << '\n';
    for (const auto& [key, value] : report.summary) out << key << '=' << fmt(value) << '\n';
    if (!out) throw std::runtime_error("failed writing: " + summary_path);
    out.close();
    report.files_written.push_back(summary_path);
  } catch (...) {
    cleanup();
    throw;
  }
  return report;
}

}  // namespace spd
