#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "fode/serial.hpp"
#include "fode/systems.hpp"

using namespace fode;

namespace {

std::vector<double> eval(const RhsFunction& f, double t, std::vector<double> y) {
  std::vector<double> out(y.size());
  f(t, y, out);
  return out;
}

}  // namespace

TEST_CASE("constant right-hand sides") {
  CHECK(eval(systems::constant({0.0}), 4.0, {7.0}) == std::vector<double>{0.0});
  CHECK(eval(systems::constant({1.0}), 0.3, {-2.0}) == std::vector<double>{1.0});
  CHECK(eval(systems::constant({1.0, 2.0, 3.0}), 1.0, {0, 0, 0}) == std::vector<double>{1.0, 2.0, 3.0});
  // A single value fills every component.
  CHECK(eval(systems::constant({0.5}), 1.0, {0, 0}) == std::vector<double>{0.5, 0.5});
  CHECK_THROWS_AS(systems::constant({std::numeric_limits<double>::infinity()}), DomainError);
  CHECK_THROWS_AS(systems::constant({}), ConfigError);
}

TEST_CASE("power-law right-hand side") {
  const auto f = systems::power_law(0.5, 2.0);
  // 2 / Γ(2.5), mpmath
  CHECK(eval(f, 1.0, {0.0})[0] == doctest::Approx(1.5045055561273500985).epsilon(1e-14));
  CHECK(eval(f, 0.0, {0.0})[0] == 0.0);
  CHECK(eval(f, 0.25, {0.0})[0] == doctest::Approx(1.5045055561273500985 * std::pow(0.25, 1.5)).epsilon(1e-14));
  const auto unit = systems::power_law(1.0, 1.0);
  CHECK(eval(unit, 0.0, {0.0})[0] == 1.0);
  CHECK(eval(unit, 3.7, {0.0})[0] == 1.0);
  CHECK_THROWS_AS(systems::power_law(0.5, 0.4), DomainError);
  CHECK_THROWS_AS(systems::power_law(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(systems::power_law(1.5, 2.0), DomainError);
}

TEST_CASE("linear right-hand side") {
  CHECK(eval(systems::linear(0.0), 1.0, {5.0, -1.0}) == std::vector<double>{0.0, -0.0});
  CHECK(eval(systems::linear(-1.0), 1.0, {2.0})[0] == -2.0);
  CHECK_THROWS_AS(systems::linear(std::numeric_limits<double>::quiet_NaN()), DomainError);

  // α = 1, λ = −1: exp(−t) decay.
  const FractionalProblem p{1.0, 1, systems::linear(-1.0), {1.0}, 2.0};
  const auto traj = solve_serial(p, GridSpec::make(2.0, 2000));
  CHECK(traj.state(2000)[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-5));
}

TEST_CASE("hindmarsh-rose examples") {
  const auto f = systems::hindmarsh_rose();
  const auto out = eval(f, 0.0, {0.0, 0.0, 0.0});
  CHECK(out[0] == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[2] == doctest::Approx(0.0384).epsilon(1e-14));

  systems::HindmarshRoseParams fixed;
  fixed.i_ext = 0.0;
  fixed.x_rest = 0.0;
  fixed.c = 0.0;
  CHECK(eval(systems::hindmarsh_rose(fixed), 5.0, {0, 0, 0}) == std::vector<double>{0.0, 0.0, 0.0});

  const auto at = eval(f, 2.0, {1.0, -2.0, 0.5});
  CHECK(at[0] == doctest::Approx(-2.0 - 1.0 + 3.0 - 0.5 + 3.25));
  CHECK(at[1] == doctest::Approx(1.0 - 5.0 + 2.0));
  CHECK(at[2] == doctest::Approx(0.006 * (4.0 * 2.6 - 0.5)));
}

TEST_CASE("hindmarsh-rose parameter validation") {
  systems::HindmarshRoseParams bad;
  bad.r = 0.0;
  CHECK_THROWS_AS(systems::hindmarsh_rose(bad), DomainError);
  bad = {};
  bad.d = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(bad), DomainError);
  CHECK_NOTHROW(validate(systems::HindmarshRoseParams{}));

  const FractionalProblem wrong_dim{0.9, 2, systems::hindmarsh_rose(), {0.1, 0.1}, 1.0};
  CHECK_THROWS(solve_serial(wrong_dim, GridSpec::make(1.0, 4)));
}

TEST_CASE("hindmarsh-rose is autonomous") {
  const auto f = systems::hindmarsh_rose();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> time(0.0, 1e4);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  for (int i = 0; i < 10000; ++i) {
    const std::vector<double> y{coord(rng), coord(rng), coord(rng)};
    const auto first = eval(f, time(rng), y);
    const auto second = eval(f, time(rng), y);
    REQUIRE(first == second);
  }
}

TEST_CASE("power-law solutions converge to t^beta") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const FractionalProblem p{alpha, 1, systems::power_law(alpha, 2.0), {0.0}, 1.0};
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n : {500, 1000, 2000}) {
      const double err = std::fabs(solve_serial(p, GridSpec::make(1.0, n)).state(n)[0] - 1.0);
      CAPTURE(alpha);
      CAPTURE(n);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous <= 1e-2);
  }
}

TEST_CASE("hindmarsh-rose trajectory stays in the envelope") {
  // Same step size as T = 1000, N = 1e5, over a shorter horizon.
  const FractionalProblem p{0.9, 3, systems::hindmarsh_rose(), {0.1, 0.1, 0.1}, 200.0};
  const auto traj = solve_serial(p, GridSpec::make(200.0, 20000));
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const auto y = traj.state(n);
    REQUIRE(std::isfinite(y[0]));
    REQUIRE(std::fabs(y[0]) <= 5.0);
    REQUIRE(std::fabs(y[1]) <= 25.0);
    REQUIRE(std::fabs(y[2]) <= 10.0);
  }
}
