#pragma once

#include <vector>

#include "fode/core.hpp"

namespace fode::systems {

/// f(t, y) = value.
RhsFunction constant(std::vector<double> value);

/// f(t, y) = Γ(β+1)/Γ(β+1-α) · t^{β-α}. With y0 = 0 the exact solution is y(t) = t^β.
/// Requires β ≥ α and β > 0.
RhsFunction power_law(double alpha, double beta);

/// f(t, y) = λ·y (any dimension). Exact solution y0 · E_α(λ t^α).
RhsFunction linear(double lambda);

/// Three-variable Hindmarsh-Rose neuron. Defaults are the canonical bursting regime.
struct HindmarshRoseParams {
  double a = 1.0;
  double b = 3.0;
  double c = 1.0;
  double d = 5.0;
  double r = 0.006;
  double s = 4.0;
  double x_rest = -1.6;
  double i_ext = 3.25;
};

void validate(const HindmarshRoseParams& params);

/// f(t, (x,y,z)) = (y − a x³ + b x² − z + I, c − d x² − y, r (s (x − x_rest) − z)).
RhsFunction hindmarsh_rose(const HindmarshRoseParams& params = {});

}  // namespace fode::systems
