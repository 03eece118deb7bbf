#include "fode/run_config.hpp"

#include "fode/parallel.hpp"
#include "fode/serial.hpp"

namespace fode {

Strategy parse_strategy(std::string_view name) {
  if (name == "serial") return Strategy::kSerial;
  if (name == "block") return Strategy::kBlock;
  if (name == "reduction") return Strategy::kReduction;
  throw ConfigError("unknown strategy '" + std::string(name) + "' (expected serial, block or reduction)");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kSerial: return "serial";
    case Strategy::kBlock: return "block";
    case Strategy::kReduction: return "reduction";
  }
  return "unknown";
}

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names = {"constant-zero", "constant", "power-law", "linear",
                                                 "hindmarsh-rose"};
  return names;
}

FractionalProblem make_problem(const RunConfig& config) {
  if (!config.alpha) {
    throw ConfigError("--alpha is required");
  }
  FractionalProblem problem;
  problem.alpha = *config.alpha;
  check_alpha(problem.alpha);
  problem.t_end = config.t_end.value_or(config.system == "hindmarsh-rose" ? 1000.0 : 1.0);

  std::vector<double> default_y0;
  if (config.system == "constant-zero") {
    problem.rhs = systems::constant({0.0});
    default_y0 = {0.0};
  } else if (config.system == "constant") {
    if (config.value.empty()) {
      throw ConfigError("system 'constant' needs --value");
    }
    problem.rhs = systems::constant(config.value);
    default_y0.assign(config.value.size(), 0.0);
  } else if (config.system == "power-law") {
    problem.rhs = systems::power_law(problem.alpha, config.beta);
    default_y0 = {0.0};
  } else if (config.system == "linear") {
    problem.rhs = systems::linear(config.lambda);
    default_y0 = {1.0};
  } else if (config.system == "hindmarsh-rose") {
    problem.rhs = systems::hindmarsh_rose(config.hindmarsh_rose);
    default_y0 = {0.1, 0.1, 0.1};
  } else {
    throw ConfigError("unknown system '" + config.system + "'");
  }
  problem.y0 = config.y0.empty() ? default_y0 : config.y0;
  problem.dim = problem.y0.size();
  if (config.system == "hindmarsh-rose" && problem.dim != 3) {
    throw ConfigError("hindmarsh-rose needs a 3-component initial state");
  }
  if (config.system == "constant" && config.value.size() != 1 && config.value.size() != problem.dim) {
    throw ConfigError("--value and --y0 have different lengths");
  }
  validate(problem);
  return problem;
}

Trajectory run_strategy(const FractionalProblem& problem, const GridSpec& grid, Strategy strategy,
                        std::size_t workers, std::size_t chunk) {
  switch (strategy) {
    case Strategy::kSerial: return solve_serial(problem, grid);
    case Strategy::kBlock: return solve_block_parallel(problem, grid, workers);
    case Strategy::kReduction: return solve_reduction_parallel(problem, grid, workers, chunk);
  }
  throw ConfigError("unknown strategy");
}

}  // namespace fode
