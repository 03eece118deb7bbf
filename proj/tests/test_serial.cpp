#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "fode/serial.hpp"
#include "fode/systems.hpp"
#include "oracles.hpp"

using namespace fode;

namespace {

FractionalProblem scalar(double alpha, RhsFunction rhs, double y0, double t_end = 1.0) {
  return FractionalProblem{alpha, 1, std::move(rhs), {y0}, t_end};
}

// History with only y_0 / f_0 filled, as the solver has it before step 0.
Trajectory initial_history(const FractionalProblem& p, const GridSpec& grid) {
  Trajectory traj(grid, p.dim);
  std::copy(p.y0.begin(), p.y0.end(), traj.state(0).begin());
  p.rhs(0.0, traj.state(0), traj.f(0));
  return traj;
}

}  // namespace

TEST_CASE("predictor examples") {
  SUBCASE("zero right-hand side keeps y0") {
    const auto p = scalar(0.6, systems::constant({0.0}), 3.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto w = precompute_weights(p.alpha, grid.n_steps);
    const auto traj = solve_serial(p, grid);
    for (std::size_t n = 0; n < 10; ++n) {
      CHECK(step_predictor(p, w, traj, n)[0] == 3.0);
    }
  }
  SUBCASE("alpha = 1, D y = 1, h = 0.1") {
    const auto p = scalar(1.0, systems::constant({1.0}), 0.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto traj = initial_history(p, grid);
    CHECK(step_predictor(p, precompute_weights(1.0, 10), traj, 0)[0] == doctest::Approx(0.1).epsilon(1e-15));
  }
  SUBCASE("alpha = 0.5, single-term sum") {
    const auto p = scalar(0.5, systems::constant({1.0}), 0.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto traj = initial_history(p, grid);
    // 0.1^0.5 / Γ(1.5), mpmath
    CHECK(step_predictor(p, precompute_weights(0.5, 10), traj, 0)[0] ==
          doctest::Approx(0.3568248232305542229).epsilon(1e-14));
  }
}

TEST_CASE("corrector examples") {
  SUBCASE("zero right-hand side keeps y0") {
    const auto p = scalar(0.6, systems::constant({0.0}), 3.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto traj = initial_history(p, grid);
    CHECK(step_corrector(p, precompute_weights(0.6, 10), traj, 0, {3.0})[0] == 3.0);
  }
  SUBCASE("alpha = 1 constant slope is exact") {
    const auto p = scalar(1.0, systems::constant({1.0}), 0.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto traj = initial_history(p, grid);
    const auto w = precompute_weights(1.0, 10);
    CHECK(step_corrector(p, w, traj, 0, step_predictor(p, w, traj, 0))[0] == doctest::Approx(0.1).epsilon(1e-15));
  }
  SUBCASE("alpha = 0.5, D y = t, second step") {
    const RhsFunction ramp = [](double t, std::span<const double>, std::span<double> out) { out[0] = t; };
    const auto p = scalar(0.5, ramp, 0.0);
    const auto grid = GridSpec::make(1.0, 10);
    const auto w = precompute_weights(0.5, 10);
    const auto traj = solve_serial(p, grid);
    const auto y2 = step_corrector(p, w, traj, 1, step_predictor(p, w, traj, 1))[0];
    // Three-term evaluation: h^α (c_1 f_0 + a_0 f_1 + f(t_2)/Γ(α+2)) with f_0 = 0.
    const long double h = 0.1L;
    const long double hand =
        std::pow(h, 0.5L) * (oracle::c(0.5L, 1) * 0.0L + oracle::a(0.5L, 0) * h + 2 * h / std::tgamma(2.5L));
    CHECK(y2 == doctest::Approx(static_cast<double>(hand)).epsilon(1e-14));
    CHECK(y2 == doctest::Approx(0.06728353392053760128659).epsilon(1e-14));  // mpmath
    CHECK(traj.state(2)[0] == y2);
  }
}

TEST_CASE("step functions reproduce the solver rows bitwise") {
  const auto p = FractionalProblem{0.8, 3, systems::hindmarsh_rose(), {0.1, 0.1, 0.1}, 5.0};
  const auto grid = GridSpec::make(p.t_end, 50);
  const auto w = precompute_weights(p.alpha, grid.n_steps);
  const auto traj = solve_serial(p, grid);
  for (std::size_t n : {0, 1, 17, 49}) {
    const auto y = step_corrector(p, w, traj, n, step_predictor(p, w, traj, n));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(y[i] == traj.state(n + 1)[i]);
    }
  }
}

TEST_CASE("step preconditions") {
  const auto p = scalar(0.5, systems::constant({1.0}), 0.0);
  const auto grid = GridSpec::make(1.0, 4);
  const auto traj = initial_history(p, grid);
  const auto w = precompute_weights(0.5, 4);
  CHECK_THROWS_AS(step_predictor(p, w, traj, 4), ConfigError);
  CHECK_THROWS_AS(step_corrector(p, w, traj, 0, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(step_corrector(p, w, traj, 0, {std::numeric_limits<double>::quiet_NaN()}), StepError);
  CHECK_THROWS_AS(step_predictor(p, precompute_weights(0.4, 4), traj, 0), ConfigError);
  CHECK_THROWS_AS(step_predictor(p, precompute_weights(0.5, 2), traj, 0), ConfigError);
}

TEST_CASE("zero right-hand side preserves the initial state bitwise") {
  const auto p = FractionalProblem{0.35, 2, systems::constant({0.0}), {3.0, -1.25}, 2.0};
  const auto traj = solve_serial(p, GridSpec::make(2.0, 500));
  for (std::size_t n = 0; n < traj.size(); ++n) {
    REQUIRE(traj.state(n)[0] == 3.0);
    REQUIRE(traj.state(n)[1] == -1.25);
  }
}

TEST_CASE("power-law problem y = t^2 at alpha = 0.5, N = 1000") {
  const auto p = scalar(0.5, systems::power_law(0.5, 2.0), 0.0);
  const auto traj = solve_serial(p, GridSpec::make(1.0, 1000));
  CHECK(std::fabs(traj.state(1000)[0] - 1.0) <= 5e-3);
}

TEST_CASE("classical decay at alpha = 1") {
  const auto p = scalar(1.0, systems::linear(-1.0), 1.0);
  const auto traj = solve_serial(p, GridSpec::make(1.0, 1000));
  CHECK(std::fabs(traj.state(1000)[0] - std::exp(-1.0)) <= 1e-4);
}

TEST_CASE("constant slope is integrated exactly at alpha = 1") {
  const auto p = scalar(1.0, systems::constant({2.5}), 1.0);
  const auto grid = GridSpec::make(3.0, 300);
  const auto traj = solve_serial(p, grid);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const double exact = 1.0 + 2.5 * grid.t(n);
    REQUIRE(std::fabs(traj.state(n)[0] - exact) <= 1e-12 * std::fabs(exact));
  }
}

TEST_CASE("f cache holds f at the accepted states") {
  const auto p = FractionalProblem{0.9, 3, systems::hindmarsh_rose(), {0.1, 0.1, 0.1}, 10.0};
  const auto traj = solve_serial(p, GridSpec::make(10.0, 200));
  std::vector<double> f(3);
  CHECK(traj.state(0)[0] == 0.1);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    p.rhs(traj.grid().t(n), traj.state(n), f);
    for (std::size_t i = 0; i < 3; ++i) {
      REQUIRE(traj.f(n)[i] == f[i]);
    }
  }
}

TEST_CASE("solver matches the independent long-double scheme") {
  const auto p = FractionalProblem{0.7, 3, systems::hindmarsh_rose(), {0.1, 0.1, 0.1}, 20.0};
  const std::size_t n_steps = 300;
  const auto traj = solve_serial(p, GridSpec::make(p.t_end, n_steps));
  const systems::HindmarshRoseParams hr;
  const auto ref = oracle::abm(
      0.7L,
      [&](long double, const std::vector<long double>& u) {
        const long double x = u[0], y = u[1], z = u[2];
        return std::vector<long double>{y - hr.a * x * x * x + hr.b * x * x - z + hr.i_ext, hr.c - hr.d * x * x - y,
                                        hr.r * (hr.s * (x - hr.x_rest) - z)};
      },
      {0.1L, 0.1L, 0.1L}, 20.0L, n_steps);
  double worst = 0.0;
  for (std::size_t n = 0; n <= n_steps; ++n) {
    for (std::size_t i = 0; i < 3; ++i) {
      worst = std::max(worst, static_cast<double>(std::fabs(traj.state(n)[i] - ref[n][i])));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("observed order on the power-law problem") {
  // min(2, 1+α) − 0.2; α = 1 is excluded because the scheme is exact there.
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto p = scalar(alpha, systems::power_law(alpha, 2.0), 0.0);
    const double e1 = std::fabs(solve_serial(p, GridSpec::make(1.0, 500)).state(500)[0] - 1.0);
    const double e2 = std::fabs(solve_serial(p, GridSpec::make(1.0, 1000)).state(1000)[0] - 1.0);
    const double order = std::log2(e1 / e2);
    CAPTURE(alpha);
    CHECK(order >= std::min(2.0, 1.0 + alpha) - 0.2);
  }
}

TEST_CASE("repeated runs are bitwise identical") {
  const auto p = FractionalProblem{0.9, 3, systems::hindmarsh_rose(), {0.1, 0.1, 0.1}, 50.0};
  const auto grid = GridSpec::make(50.0, 2000);
  CHECK(bitwise_equal(solve_serial(p, grid), solve_serial(p, grid)));
}

TEST_CASE("non-finite right-hand side fails fast with the step index") {
  const RhsFunction blow_up = [](double t, std::span<const double>, std::span<double> out) {
    out[0] = t > 0.45 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  const auto p = scalar(0.5, blow_up, 0.0);
  try {
    solve_serial(p, GridSpec::make(1.0, 10));
    FAIL("expected StepError");
  } catch (const StepError& e) {
    CHECK(e.step() == 5);
    CHECK(e.t() == doctest::Approx(0.5));
  }
}

TEST_CASE("overflowing state is reported instead of emitted") {
  const auto p = scalar(1.0, systems::linear(1e300), 1.0);
  CHECK_THROWS_AS(solve_serial(p, GridSpec::make(1.0, 10)), StepError);
}
