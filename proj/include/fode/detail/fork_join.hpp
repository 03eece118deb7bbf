#pragma once

#include <barrier>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fode::detail {

/// Fixed team of `size` participants: the calling thread is participant 0 and
/// size-1 helper threads are kept alive between rounds. run() executes the job once
/// on every participant and returns after all of them finished.
class ForkJoinPool {
 public:
  explicit ForkJoinPool(std::size_t size) : size_(size), start_(static_cast<std::ptrdiff_t>(size)),
                                            finish_(static_cast<std::ptrdiff_t>(size)) {
    helpers_.reserve(size_ - 1);
    for (std::size_t w = 1; w < size_; ++w) {
      helpers_.emplace_back([this, w] { helper_loop(w); });
    }
  }

  ForkJoinPool(const ForkJoinPool&) = delete;
  ForkJoinPool& operator=(const ForkJoinPool&) = delete;

  ~ForkJoinPool() {
    stop_ = true;
    start_.arrive_and_wait();
  }

  std::size_t size() const noexcept { return size_; }

  void run(const std::function<void(std::size_t)>& job) {
    job_ = &job;
    error_ = nullptr;
    start_.arrive_and_wait();
    execute(0);
    finish_.arrive_and_wait();
    job_ = nullptr;
    if (error_) {
      std::rethrow_exception(error_);
    }
  }

 private:
  void execute(std::size_t worker) {
    try {
      (*job_)(worker);
    } catch (...) {
      std::lock_guard lock(error_mutex_);
      if (!error_) {
        error_ = std::current_exception();
      }
    }
  }

  void helper_loop(std::size_t worker) {
    for (;;) {
      start_.arrive_and_wait();
      if (stop_) {
        return;
      }
      execute(worker);
      finish_.arrive_and_wait();
    }
  }

  std::size_t size_;
  std::barrier<> start_;
  std::barrier<> finish_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  bool stop_ = false;
  std::mutex error_mutex_;
  std::exception_ptr error_;
  // Declared last so helpers are joined before the barriers are destroyed.
  std::vector<std::jthread> helpers_;
};

}  // namespace fode::detail
