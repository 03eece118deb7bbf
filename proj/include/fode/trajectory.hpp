#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fode/core.hpp"

namespace fode {

/// States y_0..y_N on a uniform grid together with f_n = f(t_n, y_n) at the accepted
/// states. Both are stored row-major, one row of `dim` values per grid point.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(GridSpec grid, std::size_t dim)
      : grid_(grid), dim_(dim), states_((grid.n_steps + 1) * dim), f_cache_((grid.n_steps + 1) * dim) {}

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return grid_.n_steps + 1; }

  std::span<const double> state(std::size_t n) const { return {states_.data() + n * dim_, dim_}; }
  std::span<double> state(std::size_t n) { return {states_.data() + n * dim_, dim_}; }
  std::span<const double> f(std::size_t n) const { return {f_cache_.data() + n * dim_, dim_}; }
  std::span<double> f(std::size_t n) { return {f_cache_.data() + n * dim_, dim_}; }

  const std::vector<double>& states() const noexcept { return states_; }
  const std::vector<double>& f_cache() const noexcept { return f_cache_; }

 private:
  GridSpec grid_{};
  std::size_t dim_ = 0;
  std::vector<double> states_;
  std::vector<double> f_cache_;
};

/// True iff grids match and every state and f value has the identical bit pattern.
bool bitwise_equal(const Trajectory& lhs, const Trajectory& rhs);

/// max_n,i |lhs - rhs| / max(max_n,i |reference|, tiny). `rhs` is the reference.
double sup_relative_deviation(const Trajectory& lhs, const Trajectory& reference);

}  // namespace fode
