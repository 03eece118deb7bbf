#include "fode/partition.hpp"

#include <algorithm>
#include <string>

#include "fode/errors.hpp"

namespace fode {

PartitionPlan make_partition(std::size_t n_steps, std::size_t n_workers) {
  if (n_steps == 0 || n_workers == 0 || n_workers > n_steps) {
    throw ConfigError("partition needs 1 <= workers <= steps, got " + std::to_string(n_workers) + " workers for " +
                      std::to_string(n_steps) + " steps");
  }
  PartitionPlan plan;
  plan.n_steps = n_steps;
  plan.n_workers = n_workers;
  plan.block_size = (n_steps + n_workers - 1) / n_workers;
  plan.blocks.reserve(n_workers);
  for (std::size_t p = 0; p < n_workers; ++p) {
    // Trailing blocks are empty when (P-1)·N̄ >= N, e.g. N = 5, P = 4.
    const std::size_t begin = std::min(p * plan.block_size, n_steps);
    const std::size_t end = std::min(begin + plan.block_size, n_steps);
    plan.blocks.push_back({begin, end});
  }
  return plan;
}

std::size_t owner(const PartitionPlan& plan, std::size_t n) {
  if (n >= plan.n_steps) {
    throw ConfigError("step " + std::to_string(n) + " is outside the partition of " + std::to_string(plan.n_steps) +
                      " steps");
  }
  return std::min(n / plan.block_size, plan.n_workers - 1);
}

double idle_fraction(const PartitionPlan& plan, std::size_t worker) {
  if (worker >= plan.n_workers) {
    throw ConfigError("worker " + std::to_string(worker) + " is outside the partition");
  }
  // Steps owned by lower workers are exactly those before this worker's block.
  const std::size_t idle_steps = plan.blocks[worker].begin;
  return static_cast<double>(idle_steps) / static_cast<double>(plan.n_steps);
}

}  // namespace fode
