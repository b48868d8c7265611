#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace spd {

/// Step-size family gamma_n = gamma0 * (n + offset)^(-exponent).
///
/// For exponent in (1/2, 1] the sequence is square-summable but not
/// summable, and gamma_{n+1}/gamma_n -> 1; these are exactly the
/// hypotheses the averaged iterates need to converge.
struct StepSchedule {
  double gamma0 = 2.0;
  double exponent = 0.55;
  std::int64_t offset = 0;
};

inline double schedule_gamma(const StepSchedule& sched, std::int64_t n) {
  return sched.gamma0 * std::pow(static_cast<double>(n + sched.offset), -sched.exponent);
}

/// Returns std::nullopt when the schedule satisfies the step-size
/// hypotheses, otherwise a description of the violated condition.
inline std::optional<std::string> validate_schedule(const StepSchedule& sched) {
  if (!(sched.gamma0 > 0.0)) return "gamma0 not positive";
  if (!(sched.exponent > 0.5)) return "exponent <= 1/2: sum gamma_n^2 diverges";
  if (!(sched.exponent <= 1.0)) return "exponent > 1: sum gamma_n converges";
  if (sched.offset < 0) return "offset negative";
  return std::nullopt;
}

}  // namespace spd
