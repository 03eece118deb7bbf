#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fode/errors.hpp"

namespace fode {

/// Right-hand side f(t, y) of D^α y = f(t, y). Writes exactly `dydt.size() == y.size()`
/// entries. Must be reentrant: parallel strategies may call it from worker threads.
using RhsFunction = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Caputo-type initial value problem D^α y(t) = f(t, y(t)), y(0) = y0, t ∈ [0, t_end],
/// with 0 < α ≤ 1 so that only y(0) enters the initial data.
struct FractionalProblem {
  double alpha = 1.0;
  std::size_t dim = 1;
  RhsFunction rhs;
  std::vector<double> y0;
  double t_end = 1.0;
};

/// Throws DomainError / ConfigError if the problem violates its invariants.
void validate(const FractionalProblem& problem);

/// Uniform grid t_n = n·h on [0, T].
struct GridSpec {
  std::size_t n_steps = 1;
  double h = 1.0;

  static GridSpec make(double t_end, std::size_t n_steps);

  double t(std::size_t n) const noexcept { return static_cast<double>(n) * h; }
};

/// Γ(x) for finite x > 0. Relative error below 1e-14 on [0.5, 5]; exact at x = 1..20.
double gamma(double x);

/// Predictor weight b_n = ((n+1)^α − n^α) / Γ(α+1).
double predictor_weight(double alpha, std::size_t n);

/// Corrector interior weight a_n = ((n+2)^{α+1} − 2(n+1)^{α+1} + n^{α+1}) / Γ(α+2).
double corrector_weight_a(double alpha, std::size_t n);

/// Corrector first-node weight c_n = (n^{α+1} − (n−α)(n+1)^α) / Γ(α+2).
double corrector_weight_c(double alpha, std::size_t n);

/// Bulk-precomputed weights for n = 0..N. Every entry is bitwise identical to the
/// corresponding single-call function.
struct WeightTable {
  double alpha = 1.0;
  std::vector<double> b;
  std::vector<double> a;
  std::vector<double> c;
  /// Γ(α+2), divisor of the f(t_{n+1}, y^P) term in the corrector.
  double gamma_alpha_plus_2 = 2.0;

  std::size_t n_steps() const noexcept { return b.empty() ? 0 : b.size() - 1; }
};

/// Fills the table, fanning out over threads for large N. Returns only once complete.
WeightTable precompute_weights(double alpha, std::size_t n_steps);

void check_alpha(double alpha);

}  // namespace fode
