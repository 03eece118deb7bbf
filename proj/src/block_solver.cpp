#include <algorithm>
#include <atomic>
#include <barrier>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "fode/detail/scheme.hpp"
#include "fode/parallel.hpp"

namespace fode {

namespace {

// Inbox of one worker. Only the owner of the current step ever receives.
class Mailbox {
 public:
  void send(PartialSum message) {
    {
      std::lock_guard lock(mutex_);
      inbox_.push_back(std::move(message));
    }
    cv_.notify_one();
  }

  // Blocks until `count` messages of (step, phase) have arrived, then moves them into
  // `out` indexed by sending worker. Returns false on watchdog expiry.
  bool receive(std::size_t step, Phase phase, std::size_t count, std::chrono::milliseconds timeout,
               std::vector<PartialSum>& out) {
    auto matches = [&](const PartialSum& m) { return m.step == step && m.phase == phase; };
    std::unique_lock lock(mutex_);
    const bool ready = cv_.wait_for(lock, timeout, [&] {
      return static_cast<std::size_t>(std::count_if(inbox_.begin(), inbox_.end(), matches)) >= count;
    });
    if (!ready) {
      return false;
    }
    auto split = std::stable_partition(inbox_.begin(), inbox_.end(), [&](const PartialSum& m) { return !matches(m); });
    for (auto it = split; it != inbox_.end(); ++it) {
      out[it->worker] = std::move(*it);
    }
    inbox_.erase(split, inbox_.end());
    return true;
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::vector<PartialSum> inbox_;
};

class BlockRun {
 public:
  BlockRun(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers, const BlockOptions& options)
      : problem_(problem),
        grid_(grid),
        options_(options),
        weights_(precompute_weights(problem.alpha, grid.n_steps)),
        scale_(detail::step_scale(problem, grid)),
        traj_(grid, problem.dim),
        mailboxes_(n_workers),
        sync_(static_cast<std::ptrdiff_t>(n_workers)) {
    stats_.plan = make_partition(grid.n_steps, n_workers);
    stats_.idle_steps.assign(n_workers, 0);
    stats_.messages_sent.assign(n_workers, 0);
    stats_.multiply_adds.assign(n_workers, 0);
    if (options_.record_work) {
      work_pred_.assign(n_workers, std::vector<std::uint64_t>(grid.n_steps, 0));
      work_corr_.assign(n_workers, std::vector<std::uint64_t>(grid.n_steps, 0));
    }
  }

  BlockResult run() {
    std::copy(problem_.y0.begin(), problem_.y0.end(), traj_.state(0).begin());
    detail::eval_rhs(problem_, 0, 0.0, traj_.state(0), traj_.f(0));
    {
      std::vector<std::jthread> workers;
      workers.reserve(stats_.plan.n_workers);
      for (std::size_t p = 0; p < stats_.plan.n_workers; ++p) {
        workers.emplace_back([this, p] { worker_loop(p); });
      }
    }
    if (failure_) {
      std::rethrow_exception(failure_);
    }
    if (options_.record_work) {
      stats_.predictor_work.assign(grid_.n_steps, 0);
      stats_.corrector_work.assign(grid_.n_steps, 0);
      for (std::size_t p = 0; p < stats_.plan.n_workers; ++p) {
        for (std::size_t n = 0; n < grid_.n_steps; ++n) {
          stats_.predictor_work[n] += work_pred_[p][n];
          stats_.corrector_work[n] += work_corr_[p][n];
        }
      }
    }
    return {std::move(traj_), std::move(stats_)};
  }

 private:
  void fail(std::exception_ptr error) {
    std::lock_guard lock(failure_mutex_);
    if (!failure_) {
      failure_ = error;
    }
    abort_.store(true, std::memory_order_relaxed);
  }

  void worker_loop(std::size_t p) {
    const StepRange block = stats_.plan.blocks[p];
    const std::size_t dim = problem_.dim;
    std::vector<double> sum(dim);
    std::vector<double> y_pred(dim);
    std::vector<double> f_pred(dim);
    std::vector<PartialSum> received(stats_.plan.n_workers);

    for (std::size_t n = 0; n < grid_.n_steps; ++n) {
      const std::size_t o = owner(stats_.plan, n);
      try {
        if (p > o) {
          ++stats_.idle_steps[p];
        } else if (p < o) {
          send_partials(p, o, n, block, sum);
        } else {
          assemble_step(p, n, block, sum, y_pred, f_pred, received);
        }
      } catch (...) {
        fail(std::current_exception());
      }
      sync_.arrive_and_wait();
      if (abort_.load(std::memory_order_relaxed)) {
        return;
      }
    }
  }

  // Lower worker: full-block partial sums for both phases, sent to the owner.
  void send_partials(std::size_t p, std::size_t o, std::size_t n, StepRange block, std::vector<double>& sum) {
    std::fill(sum.begin(), sum.end(), 0.0);
    detail::accumulate_history(sum, weights_.b, traj_, n, block.begin, block.end);
    mailboxes_[o].send({p, n, Phase::kPredictor, sum});

    // k = 0 is weighted by c_n and handled by the owner.
    const std::size_t corr_begin = std::max<std::size_t>(block.begin, 1);
    std::fill(sum.begin(), sum.end(), 0.0);
    detail::accumulate_history(sum, weights_.a, traj_, n, corr_begin, block.end);
    mailboxes_[o].send({p, n, Phase::kCorrector, sum});

    stats_.messages_sent[p] += 2;
    const std::uint64_t pred_work = block.size();
    const std::uint64_t corr_work = block.end - corr_begin;
    stats_.multiply_adds[p] += pred_work + corr_work;
    if (options_.record_work) {
      work_pred_[p][n] += pred_work;
      work_corr_[p][n] += corr_work;
    }
  }

  void gather(std::size_t o, std::size_t n, Phase phase, std::vector<PartialSum>& received, std::vector<double>& sum) {
    if (o == 0) {
      return;
    }
    if (!mailboxes_[o].receive(n, phase, o, options_.watchdog, received)) {
      throw StrategyError("watchdog: owner " + std::to_string(o) + " received no complete gather for step " +
                          std::to_string(n) + " within " + std::to_string(options_.watchdog.count()) + " ms");
    }
    for (std::size_t q = 0; q < o; ++q) {
      const auto& partial = received[q].value;
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] += partial[i];
      }
    }
  }

  void assemble_step(std::size_t p, std::size_t n, StepRange block, std::vector<double>& sum,
                     std::vector<double>& y_pred, std::vector<double>& f_pred, std::vector<PartialSum>& received) {
    const double t_next = grid_.t(n + 1);

    std::fill(sum.begin(), sum.end(), 0.0);
    gather(p, n, Phase::kPredictor, received, sum);
    detail::accumulate_history(sum, weights_.b, traj_, n, block.begin, n + 1);
    detail::assemble_state(problem_.y0, scale_, sum, y_pred);
    detail::eval_rhs(problem_, n + 1, t_next, y_pred, f_pred);

    const auto f0 = traj_.f(0);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] = weights_.c[n] * f0[i];
    }
    gather(p, n, Phase::kCorrector, received, sum);
    const std::size_t corr_begin = std::max<std::size_t>(block.begin, 1);
    detail::accumulate_history(sum, weights_.a, traj_, n, corr_begin, n + 1);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += f_pred[i] / weights_.gamma_alpha_plus_2;
    }
    // Row n+1 is written only by its owner; the step barrier publishes it.
    detail::assemble_state(problem_.y0, scale_, sum, traj_.state(n + 1));
    detail::eval_rhs(problem_, n + 1, t_next, traj_.state(n + 1), traj_.f(n + 1));

    const std::uint64_t pred_work = n + 1 - block.begin;
    const std::uint64_t corr_work = (n + 1 - corr_begin) + 1;  // +1 for c_n·f_0
    stats_.multiply_adds[p] += pred_work + corr_work;
    if (options_.record_work) {
      work_pred_[p][n] += pred_work;
      work_corr_[p][n] += corr_work;
    }
  }

  const FractionalProblem& problem_;
  GridSpec grid_;
  BlockOptions options_;
  WeightTable weights_;
  double scale_;
  Trajectory traj_;
  BlockStats stats_;
  std::vector<std::vector<std::uint64_t>> work_pred_;
  std::vector<std::vector<std::uint64_t>> work_corr_;
  std::vector<Mailbox> mailboxes_;
  std::barrier<> sync_;
  std::atomic<bool> abort_{false};
  std::mutex failure_mutex_;
  std::exception_ptr failure_;
};

}  // namespace

BlockResult solve_block_parallel_instrumented(const FractionalProblem& problem, const GridSpec& grid,
                                              std::size_t n_workers, const BlockOptions& options) {
  validate(problem);
  BlockRun run(problem, grid, n_workers, options);
  return run.run();
}

Trajectory solve_block_parallel(const FractionalProblem& problem, const GridSpec& grid, std::size_t n_workers) {
  return solve_block_parallel_instrumented(problem, grid, n_workers).trajectory;
}

}  // namespace fode
