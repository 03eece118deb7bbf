#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fode/core.hpp"
#include "fode/trajectory.hpp"

namespace fode::verify {

/// E_α(z) = Σ z^k / Γ(αk+1), truncated once the next term falls below 1e-16 of the
/// partial sum (at least 5 terms), compensated summation in long double. On the negative
/// axis the alternating series can lose every digit (α = 0.3, z = −5 has terms near 1e92),
/// so there the asymptotic expansion −Σ z^{-k}/Γ(1−αk) is used instead whenever its
/// truncation error is smaller; E_1(z) for z < 0 is 1/E_1(−z). Validated for |z| ≤ 10;
/// larger |z| or an overflowing result throws DomainError. Independent of fode::gamma
/// (uses the C library's lgamma).
double mittag_leffler(double alpha, double z);

/// t^β
double exact_power_law(double beta, double t);

struct ErrorSample {
  std::size_t n_steps = 0;
  double sup_error = 0.0;
};

/// Least-squares slope of log(error) against log(h), h ∝ 1/N.
double observed_order(std::span<const ErrorSample> samples);

struct ConvergenceReport {
  double alpha = 0.0;
  std::string problem;
  std::vector<ErrorSample> samples;
  double observed_order = 0.0;
  /// |y_N - y(T)| at the finest grid.
  double terminal_error = 0.0;
};

using Solver = std::function<Trajectory(const FractionalProblem&, const GridSpec&)>;

/// Sup-norm error study of the power-law problem y = t^β, y0 = 0 on [0, T].
ConvergenceReport power_law_study(const Solver& solver, double alpha, double beta, double t_end,
                                  std::span<const std::size_t> n_steps);

/// CSV: header "alpha,problem,N,sup_error", one row per sample, then "observed_order,<p>".
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteOutcome {
  std::vector<CheckResult> checks;
  std::vector<ConvergenceReport> reports;

  bool passed() const;
  std::vector<std::string> failed() const;
};

/// The analytic suite: power-law orders and terminal errors for α ∈ {0.3, 0.5, 0.8, 1.0},
/// the Mittag-Leffler cross-check of the linear problem, and block / reduction
/// equivalence against the serial solver. `solver` drives the analytic checks so that
/// mutated schemes can be shown to fail.
SuiteOutcome run_suite(const Solver& solver);

/// run_suite with the reference serial solver.
SuiteOutcome run_suite();

}  // namespace fode::verify
