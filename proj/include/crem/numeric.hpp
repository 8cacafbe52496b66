#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace crem {

/// Fixed-order pairwise summation; the result depends only on the input
/// order, never on how the values were produced.
double pairwise_sum(std::span<const double> xs) noexcept;

struct MeanStderr {
  double mean;
  double std_error;
};

/// Sample mean and standard error (sample sd / sqrt(n)); stderr is 0 for n < 2.
MeanStderr mean_stderr(std::span<const double> xs);

/// Streaming log-sum-exp with a running maximum.
class LogSumExp {
 public:
  void add(double x) noexcept;
  double value() const noexcept;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

/// Two-pass log(sum exp(x_i)); -infinity for empty input.
double log_sum_exp(std::span<const double> xs) noexcept;

/// Number of workers for a request of `threads` (0 = hardware concurrency).
unsigned resolve_threads(unsigned threads, std::size_t count) noexcept;

/// Evaluates fn(r) for r = 0..count-1 on up to `threads` workers. Results are
/// stored by index, so the output is independent of scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  threads = resolve_threads(threads, count);
  if (threads <= 1) {
    for (std::size_t r = 0; r < count; ++r) out[r] = fn(r);
    return out;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < count; r += threads) {
        try {
          out[r] = fn(r);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::vector<double> run_replicas(std::size_t count, unsigned threads,
                                        const std::function<double(std::size_t)>& fn) {
  return parallel_map<double>(count, threads, fn);
}

}  // namespace crem
