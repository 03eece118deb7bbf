#pragma once

// Test-only reference implementations. They deliberately share nothing with the library's
// evaluation path: weights come straight from powl / tgammal in long double, and the
// scheme is a plain transcription of the predictor-corrector formulas.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

inline long double powz(long double x, long double p) {
  return x == 0.0L ? 0.0L : std::pow(x, p);
}

inline long double b(long double alpha, std::size_t n) {
  const long double x = n;
  return (powz(x + 1, alpha) - powz(x, alpha)) / std::tgamma(alpha + 1);
}

inline long double a(long double alpha, std::size_t n) {
  const long double x = n;
  return (powz(x + 2, alpha + 1) - 2 * powz(x + 1, alpha + 1) + powz(x, alpha + 1)) / std::tgamma(alpha + 2);
}

inline long double c(long double alpha, std::size_t n) {
  const long double x = n;
  return (powz(x, alpha + 1) - (x - alpha) * powz(x + 1, alpha)) / std::tgamma(alpha + 2);
}

enum class Mutation {
  kNone,
  kPlusPredictorSign,   // b_n = ((n+1)^α + n^α)/Γ(α+1)
  kMissingCorrectorTerm,   // drop f(t_{n+1}, y^P)/Γ(α+2)
};

using Rhs = std::function<std::vector<long double>(long double t, const std::vector<long double>& y)>;

/// Predictor-corrector in long double; returns states y_0..y_N.
inline std::vector<std::vector<long double>> abm(long double alpha, const Rhs& f, std::vector<long double> y0,
                                                 long double t_end, std::size_t n_steps,
                                                 Mutation mutation = Mutation::kNone) {
  const long double h = t_end / n_steps;
  const long double ha = std::pow(h, alpha);
  const long double g2 = std::tgamma(alpha + 2);
  const std::size_t d = y0.size();
  std::vector<long double> bw(n_steps + 1), aw(n_steps + 1), cw(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) {
    bw[n] = mutation == Mutation::kPlusPredictorSign
                ? (powz(n + 1.0L, alpha) + powz(n, alpha)) / std::tgamma(alpha + 1)
                : b(alpha, n);
    aw[n] = a(alpha, n);
    cw[n] = c(alpha, n);
  }
  std::vector<std::vector<long double>> y{y0};
  std::vector<std::vector<long double>> fs{f(0, y0)};
  for (std::size_t n = 0; n < n_steps; ++n) {
    const long double t1 = (n + 1) * h;
    std::vector<long double> yp(d);
    for (std::size_t i = 0; i < d; ++i) {
      long double s = 0;
      for (std::size_t k = 0; k <= n; ++k) s += bw[n - k] * fs[k][i];
      yp[i] = y0[i] + ha * s;
    }
    const auto fp = f(t1, yp);
    std::vector<long double> yc(d);
    for (std::size_t i = 0; i < d; ++i) {
      long double s = cw[n] * fs[0][i];
      for (std::size_t k = 1; k <= n; ++k) s += aw[n - k] * fs[k][i];
      if (mutation != Mutation::kMissingCorrectorTerm) s += fp[i] / g2;
      yc[i] = y0[i] + ha * s;
    }
    fs.push_back(f(t1, yc));
    y.push_back(std::move(yc));
  }
  return y;
}

}  // namespace oracle
