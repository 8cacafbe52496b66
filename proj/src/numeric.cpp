#include "crem/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace crem {

double pairwise_sum(std::span<const double> xs) noexcept {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanStderr mean_stderr(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return {0.0, 0.0};
  const double mean = pairwise_sum(xs) / n;
  if (xs.size() < 2) return {mean, 0.0};
  std::vector<double> sq(xs.size());
  std::transform(xs.begin(), xs.end(), sq.begin(),
                 [mean](double x) { return (x - mean) * (x - mean); });
  const double var = pairwise_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

void LogSumExp::add(double x) noexcept {
  if (x == -std::numeric_limits<double>::infinity()) return;
  if (x > max_) {
    sum_ = sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  } else {
    sum_ += std::exp(x - max_);
  }
}

double LogSumExp::value() const noexcept {
  if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
  return max_ + std::log(sum_);
}

double log_sum_exp(std::span<const double> xs) noexcept {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

unsigned resolve_threads(unsigned threads, std::size_t count) noexcept {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
}

}  // namespace crem
