#include "fode/systems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fode::systems {

RhsFunction constant(std::vector<double> value) {
  if (value.empty()) {
    throw ConfigError("constant right-hand side needs at least one value");
  }
  if (!std::all_of(value.begin(), value.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("constant right-hand side must be finite");
  }
  return [value = std::move(value)](double, std::span<const double> y, std::span<double> dydt) {
    if (value.size() == 1) {
      std::fill(dydt.begin(), dydt.end(), value[0]);
      return;
    }
    if (value.size() != y.size()) {
      throw ConfigError("constant right-hand side has " + std::to_string(value.size()) +
                        " entries for a state of dimension " + std::to_string(y.size()));
    }
    std::copy(value.begin(), value.end(), dydt.begin());
  };
}

RhsFunction power_law(double alpha, double beta) {
  check_alpha(alpha);
  if (!(beta > 0.0) || !(beta >= alpha) || !std::isfinite(beta)) {
    throw DomainError("power-law exponent beta must be finite, positive and >= alpha");
  }
  const double coef = gamma(beta + 1.0) / gamma(beta + 1.0 - alpha);
  const double exponent = beta - alpha;
  return [coef, exponent](double t, std::span<const double>, std::span<double> dydt) {
    // pow(0, 0) = 1 covers β = α.
    const double value = coef * std::pow(t, exponent);
    std::fill(dydt.begin(), dydt.end(), value);
  };
}

RhsFunction linear(double lambda) {
  if (!std::isfinite(lambda)) {
    throw DomainError("linear coefficient must be finite");
  }
  return [lambda](double, std::span<const double> y, std::span<double> dydt) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      dydt[i] = lambda * y[i];
    }
  };
}

void validate(const HindmarshRoseParams& p) {
  for (double v : {p.a, p.b, p.c, p.d, p.r, p.s, p.x_rest, p.i_ext}) {
    if (!std::isfinite(v)) {
      throw DomainError("Hindmarsh-Rose parameters must be finite");
    }
  }
  if (!(p.r > 0.0)) {
    throw DomainError("Hindmarsh-Rose time-scale ratio r must be positive");
  }
}

RhsFunction hindmarsh_rose(const HindmarshRoseParams& params) {
  validate(params);
  return [p = params](double, std::span<const double> u, std::span<double> dudt) {
    if (u.size() != 3) {
      throw ConfigError("Hindmarsh-Rose state must have 3 components");
    }
    const double x = u[0];
    const double y = u[1];
    const double z = u[2];
    const double x2 = x * x;
    dudt[0] = y - p.a * x2 * x + p.b * x2 - z + p.i_ext;
    dudt[1] = p.c - p.d * x2 - y;
    dudt[2] = p.r * (p.s * (x - p.x_rest) - z);
  };
}

}  // namespace fode::systems
