#include "fode/serial.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "fode/detail/scheme.hpp"

namespace fode {

namespace detail {

void eval_rhs(const FractionalProblem& problem, std::size_t step, double t, std::span<const double> y,
              std::span<double> out) {
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw StepError(step, t, "state became non-finite");
    }
  }
  problem.rhs(t, y, out);
  for (double v : out) {
    if (!std::isfinite(v)) {
      throw StepError(step, t, "right-hand side returned a non-finite value");
    }
  }
}

}  // namespace detail

bool bitwise_equal(const Trajectory& lhs, const Trajectory& rhs) {
  if (lhs.dim() != rhs.dim() || lhs.grid().n_steps != rhs.grid().n_steps ||
      std::memcmp(&lhs.grid().h, &rhs.grid().h, sizeof(double)) != 0) {
    return false;
  }
  auto same = [](const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
  };
  return same(lhs.states(), rhs.states()) && same(lhs.f_cache(), rhs.f_cache());
}

double sup_relative_deviation(const Trajectory& lhs, const Trajectory& reference) {
  if (lhs.states().size() != reference.states().size()) {
    throw ConfigError("trajectories have different shapes");
  }
  double scale = 0.0;
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.states().size(); ++i) {
    scale = std::max(scale, std::fabs(reference.states()[i]));
    dev = std::max(dev, std::fabs(lhs.states()[i] - reference.states()[i]));
  }
  return dev / std::max(scale, 1e-300);
}

namespace {

void check_table(const WeightTable& weights, const FractionalProblem& problem, const GridSpec& grid) {
  if (weights.alpha != problem.alpha) {
    throw ConfigError("weight table was built for a different alpha");
  }
  if (weights.n_steps() < grid.n_steps) {
    throw ConfigError("weight table is shorter than the grid");
  }
}

void check_history(const Trajectory& traj, const FractionalProblem& problem, std::size_t n) {
  if (traj.dim() != problem.dim) {
    throw ConfigError("trajectory dimension does not match the problem");
  }
  if (n >= traj.grid().n_steps) {
    throw ConfigError("step index " + std::to_string(n) + " is beyond the grid");
  }
}

void predictor_into(const FractionalProblem& problem, const WeightTable& weights, const Trajectory& traj,
                    std::size_t n, double scale, std::span<double> sum, std::span<double> out) {
  std::fill(sum.begin(), sum.end(), 0.0);
  detail::accumulate_history(sum, weights.b, traj, n, 0, n + 1);
  detail::assemble_state(problem.y0, scale, sum, out);
}

void corrector_into(const FractionalProblem& problem, const WeightTable& weights, const Trajectory& traj,
                    std::size_t n, double scale, std::span<const double> f_pred, std::span<double> sum,
                    std::span<double> out) {
  const auto f0 = traj.f(0);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = weights.c[n] * f0[i];
  }
  detail::accumulate_history(sum, weights.a, traj, n, 1, n + 1);
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] += f_pred[i] / weights.gamma_alpha_plus_2;
  }
  detail::assemble_state(problem.y0, scale, sum, out);
}

}  // namespace

std::vector<double> step_predictor(const FractionalProblem& problem, const WeightTable& weights,
                                   const Trajectory& traj, std::size_t n) {
  check_history(traj, problem, n);
  check_table(weights, problem, traj.grid());
  std::vector<double> sum(problem.dim);
  std::vector<double> out(problem.dim);
  predictor_into(problem, weights, traj, n, detail::step_scale(problem, traj.grid()), sum, out);
  for (double v : out) {
    if (!std::isfinite(v)) {
      throw StepError(n + 1, traj.grid().t(n + 1), "predictor produced a non-finite state");
    }
  }
  return out;
}

std::vector<double> step_corrector(const FractionalProblem& problem, const WeightTable& weights,
                                   const Trajectory& traj, std::size_t n, const std::vector<double>& y_pred) {
  check_history(traj, problem, n);
  check_table(weights, problem, traj.grid());
  if (y_pred.size() != problem.dim) {
    throw ConfigError("predicted state has the wrong dimension");
  }
  const double t_next = traj.grid().t(n + 1);
  for (double v : y_pred) {
    if (!std::isfinite(v)) {
      throw StepError(n + 1, t_next, "predicted state is not finite");
    }
  }
  std::vector<double> f_pred(problem.dim);
  detail::eval_rhs(problem, n + 1, t_next, y_pred, f_pred);
  std::vector<double> sum(problem.dim);
  std::vector<double> out(problem.dim);
  corrector_into(problem, weights, traj, n, detail::step_scale(problem, traj.grid()), f_pred, sum, out);
  return out;
}

Trajectory solve_serial(const FractionalProblem& problem, const GridSpec& grid) {
  validate(problem);
  return solve_serial(problem, grid, precompute_weights(problem.alpha, grid.n_steps));
}

Trajectory solve_serial(const FractionalProblem& problem, const GridSpec& grid, const WeightTable& weights) {
  validate(problem);
  check_table(weights, problem, grid);

  const std::size_t dim = problem.dim;
  const double scale = detail::step_scale(problem, grid);
  Trajectory traj(grid, dim);
  std::copy(problem.y0.begin(), problem.y0.end(), traj.state(0).begin());
  detail::eval_rhs(problem, 0, 0.0, traj.state(0), traj.f(0));

  std::vector<double> sum(dim);
  std::vector<double> y_pred(dim);
  std::vector<double> f_pred(dim);
  for (std::size_t n = 0; n < grid.n_steps; ++n) {
    const double t_next = grid.t(n + 1);
    predictor_into(problem, weights, traj, n, scale, sum, y_pred);
    detail::eval_rhs(problem, n + 1, t_next, y_pred, f_pred);
    corrector_into(problem, weights, traj, n, scale, f_pred, sum, traj.state(n + 1));
    detail::eval_rhs(problem, n + 1, t_next, traj.state(n + 1), traj.f(n + 1));
  }
  return traj;
}

}  // namespace fode
