#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fode/core.hpp"
#include "fode/systems.hpp"
#include "fode/trajectory.hpp"

namespace fode {

enum class Strategy { kSerial, kBlock, kReduction };

Strategy parse_strategy(std::string_view name);
std::string_view to_string(Strategy strategy);

/// Everything needed to build and run one problem. Systems are selected by name:
/// constant-zero, constant, power-law, linear, hindmarsh-rose.
struct RunConfig {
  std::string system;
  std::optional<double> alpha;
  /// Defaults to 1000 for hindmarsh-rose and 1 otherwise.
  std::optional<double> t_end;
  std::size_t n_steps = 1000;
  Strategy strategy = Strategy::kSerial;
  std::size_t workers = 1;
  std::size_t chunk = 1024;
  std::string output;

  /// Empty means the system's default initial state.
  std::vector<double> y0;
  double beta = 2.0;
  double lambda = -1.0;
  std::vector<double> value;
  systems::HindmarshRoseParams hindmarsh_rose;
};

const std::vector<std::string>& system_names();

/// Builds the problem described by `config`; throws ConfigError / DomainError.
FractionalProblem make_problem(const RunConfig& config);

Trajectory run_strategy(const FractionalProblem& problem, const GridSpec& grid, Strategy strategy,
                        std::size_t workers, std::size_t chunk);

}  // namespace fode
