#include "fode/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "fode/csv.hpp"
#include "fode/parallel.hpp"
#include "fode/serial.hpp"

namespace fode::bench {

double median(std::vector<double> values) {
  if (values.empty()) {
    throw ConfigError("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

struct TimedRun {
  Trajectory trajectory;
  std::vector<std::uint64_t> idle_steps;
  double seconds = 0.0;
};

TimedRun timed_run(const FractionalProblem& problem, const GridSpec& grid, const BenchCell& cell) {
  TimedRun out;
  const auto start = std::chrono::steady_clock::now();
  switch (cell.strategy) {
    case Strategy::kSerial:
      out.trajectory = solve_serial(problem, grid);
      break;
    case Strategy::kBlock: {
      auto result = solve_block_parallel_instrumented(problem, grid, cell.workers);
      out.trajectory = std::move(result.trajectory);
      out.idle_steps = std::move(result.stats.idle_steps);
      break;
    }
    case Strategy::kReduction:
      out.trajectory = solve_reduction_parallel(problem, grid, cell.workers, cell.chunk.value_or(kDefaultChunk));
      break;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

BenchRecord run_cell(const FractionalProblem& problem, const BenchCell& cell, int repetitions, bool warmup,
                     std::size_t project_to) {
  BenchRecord record;
  record.cell = cell;
  record.repetitions = repetitions;
  try {
    if (repetitions < 1) {
      throw ConfigError("repetitions must be at least 1");
    }
    const GridSpec grid = GridSpec::make(problem.t_end, cell.n_steps);
    if (warmup) {
      timed_run(problem, grid, cell);
    }
    std::vector<double> times;
    std::optional<Trajectory> first;
    for (int r = 0; r < repetitions; ++r) {
      TimedRun run = timed_run(problem, grid, cell);
      times.push_back(run.seconds);
      if (!first) {
        first = std::move(run.trajectory);
        record.idle_steps = std::move(run.idle_steps);
      } else if (!bitwise_equal(*first, run.trajectory)) {
        record.deterministic = false;
      }
    }
    record.wall_time_s = median(std::move(times));
    const double ratio = static_cast<double>(project_to) / static_cast<double>(cell.n_steps);
    record.projected_wall_time_s = record.wall_time_s * ratio * ratio;
  } catch (const std::exception& e) {
    record.status = e.what();
    record.wall_time_s = std::numeric_limits<double>::quiet_NaN();
    record.projected_wall_time_s = std::numeric_limits<double>::quiet_NaN();
  }
  return record;
}

std::vector<BenchRecord> run_sweep(const BenchConfig& config, std::ostream* progress) {
  const FractionalProblem problem = make_problem(config.base);

  std::vector<BenchCell> cells;
  for (std::size_t n : config.steps) {
    cells.push_back({Strategy::kSerial, n, 1, std::nullopt});
    for (Strategy s : config.strategies) {
      if (s == Strategy::kSerial) {
        continue;
      }
      for (std::size_t p : config.workers) {
        if (s == Strategy::kBlock) {
          cells.push_back({s, n, p, std::nullopt});
        } else {
          for (std::size_t chunk : config.chunks) {
            cells.push_back({s, n, p, chunk});
          }
        }
      }
    }
  }

  std::vector<BenchRecord> records;
  records.reserve(cells.size());
  double serial_time = std::numeric_limits<double>::quiet_NaN();
  for (const auto& cell : cells) {
    BenchRecord record = run_cell(problem, cell, config.repetitions, config.warmup, config.project_to);
    if (cell.strategy == Strategy::kSerial) {
      serial_time = record.wall_time_s;
    }
    record.speedup_vs_serial = record.ok() ? serial_time / record.wall_time_s : std::numeric_limits<double>::quiet_NaN();
    if (progress) {
      *progress << to_string(cell.strategy) << " N=" << cell.n_steps << " P=" << cell.workers;
      if (cell.chunk) {
        *progress << " chunk=" << *cell.chunk;
      }
      *progress << ": " << (record.ok() ? csv::format_double(record.wall_time_s) + " s" : record.status) << '\n';
    }
    records.push_back(std::move(record));
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "strategy,N,P,chunk,wall_time_s,repetitions,speedup_vs_serial,projected_wall_time_s,deterministic,"
         "idle_steps,status\n";
  for (const auto& r : records) {
    out << to_string(r.cell.strategy) << ',' << r.cell.n_steps << ',' << r.cell.workers << ',';
    if (r.cell.chunk) {
      out << *r.cell.chunk;
    }
    out << ',' << csv::format_double(r.wall_time_s) << ',' << r.repetitions << ','
        << csv::format_double(r.speedup_vs_serial) << ',' << csv::format_double(r.projected_wall_time_s) << ','
        << (r.deterministic ? 1 : 0) << ',';
    for (std::size_t i = 0; i < r.idle_steps.size(); ++i) {
      out << (i ? ";" : "") << r.idle_steps[i];
    }
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << ',' << status << '\n';
  }
}

}  // namespace fode::bench
