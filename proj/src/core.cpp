#include "fode/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

namespace fode {

StepError::StepError(std::size_t step, double t, const std::string& what)
    : std::runtime_error(what + " (step " + std::to_string(step) + ", t = " + std::to_string(t) + ")"),
      step_(step),
      t_(t) {}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractional order alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

void validate(const FractionalProblem& problem) {
  check_alpha(problem.alpha);
  if (problem.dim == 0) {
    throw ConfigError("problem dimension must be at least 1");
  }
  if (problem.y0.size() != problem.dim) {
    throw ConfigError("initial state has " + std::to_string(problem.y0.size()) + " entries, expected " +
                      std::to_string(problem.dim));
  }
  if (!std::all_of(problem.y0.begin(), problem.y0.end(), [](double v) { return std::isfinite(v); })) {
    throw ConfigError("initial state must be finite");
  }
  if (!(problem.t_end > 0.0) || !std::isfinite(problem.t_end)) {
    throw ConfigError("horizon t_end must be positive and finite");
  }
  if (!problem.rhs) {
    throw ConfigError("problem has no right-hand side");
  }
}

GridSpec GridSpec::make(double t_end, std::size_t n_steps) {
  if (n_steps == 0) {
    throw ConfigError("number of steps must be positive");
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("horizon t_end must be positive and finite");
  }
  return GridSpec{n_steps, t_end / static_cast<double>(n_steps)};
}

namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

// Weights are formed in extended precision. Below this index the power differences are
// taken directly; from it on, via binomial series in 1/n that never subtract the
// O(n^{α+1}) powers from each other.
constexpr std::size_t kSeriesFrom = 64;
constexpr int kMaxSeriesTerms = 60;
constexpr long double kSeriesTol = 1e-21L;

long double power(long double x, long double p) {
  return x == 0.0L ? 0.0L : std::pow(x, p);
}

// Σ_{k≥first} coef(k) · x^k for a coefficient generator that must be advanced in order.
template <class Coef>
long double binomial_tail(long double x, int first, Coef&& coef) {
  long double sum = 0.0L;
  long double xk = 1.0L;
  for (int k = 1; k < first; ++k) {
    coef(k);
    xk *= x;
  }
  for (int k = first; k < first + kMaxSeriesTerms; ++k) {
    xk *= x;
    const long double term = coef(k) * xk;
    sum += term;
    if (std::fabs(term) <= kSeriesTol * std::fabs(sum)) {
      break;
    }
  }
  return sum;
}

// Generalized binomial coefficients C(p, k) produced incrementally, C(p, 0) = 1.
class Binomial {
 public:
  explicit Binomial(long double p) : p_(p) {}
  long double next(int k) {
    value_ *= (p_ - static_cast<long double>(k - 1)) / static_cast<long double>(k);
    return value_;
  }

 private:
  long double p_;
  long double value_ = 1.0L;
};

// (n+1)^α − n^α
long double first_difference(long double alpha, std::size_t n) {
  const auto nl = static_cast<long double>(n);
  if (n < kSeriesFrom) {
    return power(nl + 1.0L, alpha) - power(nl, alpha);
  }
  Binomial binom(alpha);
  return power(nl, alpha) * binomial_tail(1.0L / nl, 1, [&](int k) { return binom.next(k); });
}

// (n+2)^p − 2(n+1)^p + n^p with p = α+1
long double second_difference(long double alpha, std::size_t n) {
  const long double p = alpha + 1.0L;
  const auto nl = static_cast<long double>(n);
  if (n < kSeriesFrom) {
    return power(nl + 2.0L, p) - 2.0L * power(nl + 1.0L, p) + power(nl, p);
  }
  Binomial binom(p);
  long double two_k = 1.0L;
  return power(nl, p) * binomial_tail(1.0L / nl, 2, [&](int k) {
           two_k *= 2.0L;
           const long double cpk = binom.next(k);
           return cpk * (two_k - 2.0L);
         });
}

// n^{α+1} − (n−α)(n+1)^α
long double first_node_term(long double alpha, std::size_t n) {
  const auto nl = static_cast<long double>(n);
  if (n < kSeriesFrom) {
    return power(nl, alpha + 1.0L) - (nl - alpha) * power(nl + 1.0L, alpha);
  }
  // Expanding (n+1)^α in 1/n, the 1/n terms cancel exactly; the coefficient of n^{-k}
  // is α·C(α, k−1) − C(α, k).
  Binomial binom(alpha);
  long double previous = 1.0L;
  return power(nl, alpha + 1.0L) * binomial_tail(1.0L / nl, 2, [&](int k) {
           const long double current = binom.next(k);
           const long double coef = alpha * previous - current;
           previous = current;
           return coef;
         });
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma requires a finite positive argument, got " + std::to_string(x));
  }
  if (x <= 20.0 && x == std::floor(x)) {
    double factorial = 1.0;
    for (double k = 2.0; k < x; k += 1.0) {
      factorial *= k;
    }
    return factorial;
  }
  return lanczos_gamma(x);
}

double predictor_weight(double alpha, std::size_t n) {
  check_alpha(alpha);
  const long double g = gamma(alpha + 1.0);
  return static_cast<double>(first_difference(alpha, n) / g);
}

double corrector_weight_a(double alpha, std::size_t n) {
  check_alpha(alpha);
  const long double g = gamma(alpha + 2.0);
  return static_cast<double>(second_difference(alpha, n) / g);
}

double corrector_weight_c(double alpha, std::size_t n) {
  check_alpha(alpha);
  const long double g = gamma(alpha + 2.0);
  return static_cast<double>(first_node_term(alpha, n) / g);
}

WeightTable precompute_weights(double alpha, std::size_t n_steps) {
  check_alpha(alpha);
  if (n_steps == 0) {
    throw ConfigError("weight table needs at least one step");
  }
  WeightTable table;
  table.alpha = alpha;
  table.gamma_alpha_plus_2 = gamma(alpha + 2.0);
  const std::size_t len = n_steps + 1;
  table.b.resize(len);
  table.a.resize(len);
  table.c.resize(len);

  auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      table.b[n] = predictor_weight(alpha, n);
      table.a[n] = corrector_weight_a(alpha, n);
      table.c[n] = corrector_weight_c(alpha, n);
    }
  };

  constexpr std::size_t kParallelFrom = std::size_t{1} << 15;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (len < kParallelFrom || hw == 1) {
    fill(0, len);
    return table;
  }
  // Entries are independent, so the split does not affect the values.
  const std::size_t parts = std::min<std::size_t>(hw, 16);
  const std::size_t span = (len + parts - 1) / parts;
  {
    std::vector<std::jthread> workers;
    for (std::size_t p = 1; p < parts; ++p) {
      const std::size_t lo = std::min(len, p * span);
      const std::size_t hi = std::min(len, lo + span);
      workers.emplace_back(fill, lo, hi);
    }
    fill(0, std::min(len, span));
  }
  return table;
}

}  // namespace fode
