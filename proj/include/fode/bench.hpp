#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fode/run_config.hpp"

namespace fode::bench {

struct BenchCell {
  Strategy strategy = Strategy::kSerial;
  std::size_t n_steps = 0;
  std::size_t workers = 1;
  /// Only meaningful for the reduction strategy.
  std::optional<std::size_t> chunk;
};

/// One timed cell of a sweep. wall_time_s is the median over `repetitions` runs after a
/// discarded warmup run.
struct BenchRecord {
  BenchCell cell;
  double wall_time_s = 0.0;
  int repetitions = 0;
  double speedup_vs_serial = 0.0;
  /// wall_time_s scaled by the O(N²) cost model to BenchConfig::project_to steps.
  double projected_wall_time_s = 0.0;
  /// Trajectories of all repetitions were bitwise identical.
  bool deterministic = true;
  /// Block strategy only: idle steps per worker.
  std::vector<std::uint64_t> idle_steps;
  /// "ok" or the failure message.
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct BenchConfig {
  RunConfig base;
  std::vector<Strategy> strategies = {Strategy::kSerial, Strategy::kBlock, Strategy::kReduction};
  std::vector<std::size_t> steps = {10000, 20000};
  std::vector<std::size_t> workers = {1, 2, 4};
  std::vector<std::size_t> chunks = {1024};
  int repetitions = 3;
  bool warmup = true;
  std::size_t project_to = 3'000'000;
};

double median(std::vector<double> values);

/// Times one cell. Does not fill speedup_vs_serial.
BenchRecord run_cell(const FractionalProblem& problem, const BenchCell& cell, int repetitions, bool warmup,
                     std::size_t project_to);

/// Expands the sweep (a serial cell per N is always included), runs cells one after
/// another, and fills speedups against the serial cell with the same N. A failing cell
/// is recorded and the sweep continues.
std::vector<BenchRecord> run_sweep(const BenchConfig& config, std::ostream* progress = nullptr);

/// Header: strategy,N,P,chunk,wall_time_s,repetitions,speedup_vs_serial,
/// projected_wall_time_s,deterministic,idle_steps,status
void write_csv(std::ostream& out, std::span<const BenchRecord> records);

}  // namespace fode::bench
