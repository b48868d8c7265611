#include "spd/schedule.hpp"

#include <doctest.h>

#include <cmath>

using namespace spd;

TEST_SUITE_BEGIN("schedule");

TEST_CASE("power family values") {
  CHECK(schedule_gamma({0.5, 0.75, 0}, 1) == 0.5);
  CHECK(schedule_gamma({1.0, 1.0, 0}, 4) == 0.25);

  // 16^(3/4) evaluated independently through repeated square roots
  const double root = std::sqrt(16.0);          // 16^(1/2) = 4
  const double quarter = std::sqrt(root);       // 16^(1/4) = 2
  CHECK(root * quarter == 8.0);
  CHECK(schedule_gamma({0.5, 0.75, 0}, 16) == doctest::Approx(0.5 / (root * quarter)).epsilon(1e-15));

  // offset shifts the argument
  CHECK(schedule_gamma({1.0, 1.0, 6}, 4) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("validate_schedule names the violated condition") {
  CHECK(!validate_schedule({0.5, 0.75, 0}));
  CHECK(!validate_schedule({0.5, 1.0, 0}));   // boundary a = 1 allowed
  CHECK(*validate_schedule({0.5, 0.4, 0}) == "exponent <= 1/2: sum gamma_n^2 diverges");
  CHECK(*validate_schedule({0.5, 0.5, 0}) == "exponent <= 1/2: sum gamma_n^2 diverges");
  CHECK(*validate_schedule({-1.0, 0.75, 0}) == "gamma0 not positive");
  CHECK(*validate_schedule({0.0, 0.75, 0}) == "gamma0 not positive");
  CHECK(*validate_schedule({0.5, 1.2, 0}) == "exponent > 1: sum gamma_n converges");
  CHECK(*validate_schedule({0.5, 0.75, -3}) == "offset negative");
}

TEST_CASE("divergence and convergence witnesses at a = 0.75") {
  const StepSchedule sched{1.0, 0.75, 0};
  double sum_1e3 = 0.0, sum_1e6 = 0.0, sq_1e5 = 0.0, sq_1e6 = 0.0;
  for (std::int64_t n = 1; n <= 1000000; ++n) {
    const double g = schedule_gamma(sched, n);
    sum_1e6 += g;
    sq_1e6 += g * g;
    if (n <= 1000) sum_1e3 += g;
    if (n <= 100000) sq_1e5 += g * g;
  }
  CHECK(sum_1e6 >= 5.0 * sum_1e3);           // partial sums keep growing
  CHECK(sq_1e6 - sq_1e5 <= 0.01 * sq_1e5);   // squared sums have converged
}

TEST_CASE("step ratio approaches one at rate a/n") {
  for (const StepSchedule sched :
       {StepSchedule{0.5, 0.75, 0}, StepSchedule{1.0, 1.0, 0}, StepSchedule{2.0, 0.55, 0},
        StepSchedule{0.3, 0.51, 7}}) {
    for (std::int64_t n : {1, 2, 3, 5, 10, 77, 1000, 44721, 1000000}) {
      const double ratio = schedule_gamma(sched, n + 1) / schedule_gamma(sched, n);
      CHECK(std::abs(ratio - 1.0) <= sched.exponent / static_cast<double>(n));
    }
  }
}

TEST_SUITE_END();
