#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fode/core.hpp"
#include "fode/partition.hpp"
#include "fode/trajectory.hpp"

namespace fode {

/// Which history sum a partial belongs to.
enum class Phase : std::uint8_t { kPredictor, kCorrector };

/// Weighted block sum Σ_{k in block} w_{n-k} f_k sent by a lower worker to the owner of
/// step n (w = b for the predictor, w = a for the corrector).
struct PartialSum {
  std::size_t worker = 0;
  std::size_t step = 0;
  Phase phase = Phase::kPredictor;
  std::vector<double> value;
};

struct BlockOptions {
  /// Longest time an owner waits for a partial sum before declaring the protocol stuck.
  std::chrono::milliseconds watchdog{60'000};
  /// Record per-step multiply-add totals (summed over workers) in BlockStats.
  bool record_work = false;
};

struct BlockStats {
  PartitionPlan plan;
  /// Steps during which the worker's block lay above the owner's.
  std::vector<std::uint64_t> idle_steps;
  std::vector<std::uint64_t> messages_sent;
  std::vector<std::uint64_t> multiply_adds;
  /// Only filled with BlockOptions::record_work; indexed by step n.
  std::vector<std::uint64_t> predictor_work;
  std::vector<std::uint64_t> corrector_work;
};

struct BlockResult {
  Trajectory trajectory;
  BlockStats stats;
};

/// Block-partitioned strategy: P long-lived workers each own a contiguous range of
/// history indices. For every step the workers below the owner send their full block
/// partial sums, the owner adds them in ascending worker order onto its running sum and
/// its own [n_min, n] range, evaluates f, and publishes y_{n+1}, f_{n+1} before a step
/// barrier. Workers above the owner idle. P = 1 is bitwise identical to solve_serial.
Trajectory solve_block_parallel(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers);

BlockResult solve_block_parallel_instrumented(const FractionalProblem& problem, const GridSpec& grid,
                                              std::size_t n_workers, const BlockOptions& options = {});

inline constexpr std::size_t kDefaultChunk = 1024;

struct ReductionStats {
  /// Steps whose chunk sums were fanned out to the pool (the rest ran on the caller).
  std::uint64_t dispatched_steps = 0;
  std::uint64_t chunk_sums = 0;
};

struct ReductionResult {
  Trajectory trajectory;
  ReductionStats stats;
};

/// Chunked reduction strategy: each history sum is cut into fixed chunks of `chunk`
/// consecutive k (boundaries depend only on n and chunk), chunk sums are formed in
/// ascending k by a worker pool and combined by a fixed pairwise tree. Results are
/// bitwise reproducible for fixed parameters; a single chunk reproduces solve_serial.
Trajectory solve_reduction_parallel(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers,
                                    std::size_t chunk = kDefaultChunk);

ReductionResult solve_reduction_parallel_instrumented(const FractionalProblem& problem, const GridSpec& grid,
                                                      std::size_t n_workers, std::size_t chunk = kDefaultChunk);

/// Deterministic pairwise tree sum of `count` vectors of length `dim`, stored
/// contiguously in `partials` (overwritten). Result is left in the first `dim` entries.
void tree_reduce(std::span<double> partials, std::size_t count, std::size_t dim);

}  // namespace fode
