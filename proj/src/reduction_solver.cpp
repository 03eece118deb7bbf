#include <algorithm>
#include <string>

#include "fode/detail/fork_join.hpp"
#include "fode/detail/scheme.hpp"
#include "fode/parallel.hpp"

namespace fode {

void tree_reduce(std::span<double> partials, std::size_t count, std::size_t dim) {
  // Level by level: slot i receives slots 2i and 2i+1; an odd tail slot moves up as is.
  while (count > 1) {
    const std::size_t pairs = count / 2;
    for (std::size_t i = 0; i < pairs; ++i) {
      double* dst = partials.data() + i * dim;
      const double* lhs = partials.data() + 2 * i * dim;
      const double* rhs = lhs + dim;
      for (std::size_t j = 0; j < dim; ++j) {
        dst[j] = lhs[j] + rhs[j];
      }
    }
    if (count % 2 == 1) {
      std::copy_n(partials.data() + (count - 1) * dim, dim, partials.data() + pairs * dim);
    }
    count = pairs + count % 2;
  }
}

namespace {

class ReductionRun {
 public:
  ReductionRun(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers, std::size_t chunk)
      : problem_(problem),
        grid_(grid),
        chunk_(chunk),
        weights_(precompute_weights(problem.alpha, grid.n_steps)),
        scale_(detail::step_scale(problem, grid)),
        traj_(grid, problem.dim),
        pool_(n_workers) {
    const std::size_t max_chunks = (grid.n_steps - 1) / chunk + 1;
    pred_partials_.resize(max_chunks * problem.dim);
    corr_partials_.resize(max_chunks * problem.dim);
  }

  ReductionResult run() {
    const std::size_t dim = problem_.dim;
    std::copy(problem_.y0.begin(), problem_.y0.end(), traj_.state(0).begin());
    detail::eval_rhs(problem_, 0, 0.0, traj_.state(0), traj_.f(0));

    std::vector<double> y_pred(dim);
    std::vector<double> f_pred(dim);
    std::size_t step = 0;
    std::size_t n_chunks = 0;
    const std::function<void(std::size_t)> job = [&](std::size_t worker) {
      // Units 0..m-1 are predictor chunks, m..2m-1 corrector chunks.
      const std::size_t units = 2 * n_chunks;
      const std::size_t workers = pool_.size();
      const std::size_t lo = units * worker / workers;
      const std::size_t hi = units * (worker + 1) / workers;
      for (std::size_t u = lo; u < hi; ++u) {
        chunk_sum(step, u % n_chunks, u < n_chunks ? Phase::kPredictor : Phase::kCorrector);
      }
    };

    for (std::size_t n = 0; n < grid_.n_steps; ++n) {
      const double t_next = grid_.t(n + 1);
      step = n;
      n_chunks = n / chunk_ + 1;  // ⌈(n+1)/chunk⌉ without overflow
      if (n_chunks > 1 && pool_.size() > 1) {
        pool_.run(job);
        ++stats_.dispatched_steps;
      } else {
        for (std::size_t j = 0; j < n_chunks; ++j) {
          chunk_sum(n, j, Phase::kPredictor);
          chunk_sum(n, j, Phase::kCorrector);
        }
      }
      stats_.chunk_sums += 2 * n_chunks;

      tree_reduce(pred_partials_, n_chunks, dim);
      detail::assemble_state(problem_.y0, scale_, std::span<const double>(pred_partials_.data(), dim), y_pred);
      detail::eval_rhs(problem_, n + 1, t_next, y_pred, f_pred);

      tree_reduce(corr_partials_, n_chunks, dim);
      std::span<double> sum(corr_partials_.data(), dim);
      for (std::size_t i = 0; i < dim; ++i) {
        sum[i] += f_pred[i] / weights_.gamma_alpha_plus_2;
      }
      detail::assemble_state(problem_.y0, scale_, sum, traj_.state(n + 1));
      detail::eval_rhs(problem_, n + 1, t_next, traj_.state(n + 1), traj_.f(n + 1));
    }
    return {std::move(traj_), stats_};
  }

 private:
  // Chunk j covers k in [j·chunk, min((j+1)·chunk, n+1)), summed in ascending k from zero.
  // For the corrector the k = 0 weight is c_n instead of a_n.
  void chunk_sum(std::size_t n, std::size_t j, Phase phase) {
    const std::size_t dim = problem_.dim;
    const std::size_t k_lo = j * chunk_;
    const std::size_t k_hi = k_lo + std::min(chunk_, n + 1 - k_lo);
    std::span<double> sum((phase == Phase::kPredictor ? pred_partials_ : corr_partials_).data() + j * dim, dim);
    if (phase == Phase::kPredictor) {
      std::fill(sum.begin(), sum.end(), 0.0);
      detail::accumulate_history(sum, weights_.b, traj_, n, k_lo, k_hi);
      return;
    }
    std::size_t first = k_lo;
    if (k_lo == 0) {
      const auto f0 = traj_.f(0);
      for (std::size_t i = 0; i < dim; ++i) {
        sum[i] = weights_.c[n] * f0[i];
      }
      first = 1;
    } else {
      std::fill(sum.begin(), sum.end(), 0.0);
    }
    detail::accumulate_history(sum, weights_.a, traj_, n, first, k_hi);
  }

  const FractionalProblem& problem_;
  GridSpec grid_;
  std::size_t chunk_;
  WeightTable weights_;
  double scale_;
  Trajectory traj_;
  std::vector<double> pred_partials_;
  std::vector<double> corr_partials_;
  ReductionStats stats_;
  detail::ForkJoinPool pool_;
};

}  // namespace

ReductionResult solve_reduction_parallel_instrumented(const FractionalProblem& problem, const GridSpec& grid,
                                                      std::size_t n_workers, std::size_t chunk) {
  validate(problem);
  if (n_workers == 0 || n_workers > grid.n_steps) {
    throw ConfigError("reduction strategy needs 1 <= workers <= steps, got " + std::to_string(n_workers));
  }
  if (chunk == 0) {
    throw ConfigError("reduction chunk must be positive");
  }
  ReductionRun run(problem, grid, n_workers, chunk);
  return run.run();
}

Trajectory solve_reduction_parallel(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers,
                                    std::size_t chunk) {
  return solve_reduction_parallel_instrumented(problem, grid, n_workers, chunk).trajectory;
}

}  // namespace fode
