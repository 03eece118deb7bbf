#pragma once

// Floating-point building blocks shared by every strategy. Each strategy must combine
// them in the same order as the serial solver where bitwise agreement is promised.

#include <cmath>
#include <cstddef>
#include <span>

#include "fode/core.hpp"
#include "fode/trajectory.hpp"

namespace fode::detail {

inline double step_scale(const FractionalProblem& problem, const GridSpec& grid) {
  return std::pow(grid.h, problem.alpha);
}

/// Calls the rhs and rejects non-finite output with the grid index being produced.
void eval_rhs(const FractionalProblem& problem, std::size_t step, double t, std::span<const double> y,
              std::span<double> out);

template <std::size_t Dim>
inline void accumulate_fixed(double* sum, const double* weights, const double* f, std::size_t n, std::size_t k_lo,
                             std::size_t k_hi) {
  double acc[Dim];
  for (std::size_t i = 0; i < Dim; ++i) acc[i] = sum[i];
  for (std::size_t k = k_lo; k < k_hi; ++k) {
    const double w = weights[n - k];
    const double* fk = f + k * Dim;
    for (std::size_t i = 0; i < Dim; ++i) acc[i] += w * fk[i];
  }
  for (std::size_t i = 0; i < Dim; ++i) sum[i] = acc[i];
}

/// sum += Σ_{k=k_lo}^{k_hi-1} weights[n-k] · f_k, ascending in k.
inline void accumulate_history(std::span<double> sum, std::span<const double> weights, const Trajectory& traj,
                               std::size_t n, std::size_t k_lo, std::size_t k_hi) {
  const std::size_t dim = sum.size();
  const double* f = traj.f_cache().data();
  switch (dim) {
    case 1: return accumulate_fixed<1>(sum.data(), weights.data(), f, n, k_lo, k_hi);
    case 2: return accumulate_fixed<2>(sum.data(), weights.data(), f, n, k_lo, k_hi);
    case 3: return accumulate_fixed<3>(sum.data(), weights.data(), f, n, k_lo, k_hi);
    default: break;
  }
  for (std::size_t k = k_lo; k < k_hi; ++k) {
    const double w = weights[n - k];
    const double* fk = f + k * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      sum[i] += w * fk[i];
    }
  }
}

/// out = y0 + scale · sum
inline void assemble_state(std::span<const double> y0, double scale, std::span<const double> sum,
                           std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = y0[i] + scale * sum[i];
  }
}

}  // namespace fode::detail
