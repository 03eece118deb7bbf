#pragma once

#include <cstddef>
#include <vector>

namespace fode {

/// Half-open range of step indices [begin, end).
struct StepRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t n) const noexcept { return n >= begin && n < end; }
};

/// Contiguous blocks of step indices {0..N-1}, one per worker. Block p is
/// [p·N̄, min((p+1)·N̄, N)) with N̄ = ⌈N/P⌉.
struct PartitionPlan {
  std::size_t n_steps = 0;
  std::size_t n_workers = 0;
  std::size_t block_size = 0;
  std::vector<StepRange> blocks;
};

/// Throws ConfigError unless 1 ≤ n_workers ≤ n_steps.
PartitionPlan make_partition(std::size_t n_steps, std::size_t n_workers);

/// Worker that assembles step n, i.e. ⌊n / N̄⌋ clamped to P-1.
std::size_t owner(const PartitionPlan& plan, std::size_t n);

/// Fraction of the N steps during which `worker` waits for the iteration to reach its
/// block: #{n : owner(n) < worker} / N.
double idle_fraction(const PartitionPlan& plan, std::size_t worker);

}  // namespace fode
