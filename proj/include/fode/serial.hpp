#pragma once

#include <cstddef>
#include <vector>

#include "fode/core.hpp"
#include "fode/trajectory.hpp"

namespace fode {

/// Predictor y^P_{n+1} = y0 + h^α Σ_{k=0}^{n} b_{n-k} f_k, summed in ascending k.
/// Requires rows 0..n of `traj` to be complete.
std::vector<double> step_predictor(const FractionalProblem& problem, const WeightTable& weights,
                                   const Trajectory& traj, std::size_t n);

/// Corrector y_{n+1} = y0 + h^α (c_n f_0 + Σ_{k=1}^{n} a_{n-k} f_k + f(t_{n+1}, y^P)/Γ(α+2)).
std::vector<double> step_corrector(const FractionalProblem& problem, const WeightTable& weights,
                                   const Trajectory& traj, std::size_t n, const std::vector<double>& y_pred);

/// Reference PECE solver: one predictor and one corrector per step, f cached at the
/// corrected state. O(N²) in the number of steps.
Trajectory solve_serial(const FractionalProblem& problem, const GridSpec& grid);

/// Same, with a caller-supplied weight table (must cover at least grid.n_steps).
Trajectory solve_serial(const FractionalProblem& problem, const GridSpec& grid, const WeightTable& weights);

}  // namespace fode
