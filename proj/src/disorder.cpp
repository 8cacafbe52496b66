#include "crem/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <boost/random/normal_distribution.hpp>
#include <string>

#include "crem/error.hpp"

namespace crem {

void check_depth(int N, bool allow_zero) {
  if (N > kMaxDepth || N < (allow_zero ? 0 : 1)) {
    throw Error(ErrorKind::depth_too_large,
                "depth must lie in [1," + std::to_string(kMaxDepth) + "], got " +
                    std::to_string(N));
  }
}

std::vector<double> level_scales(const CovarianceSpec& spec, int N) {
  check_depth(N);
  std::vector<double> scales(static_cast<std::size_t>(N));
  const double n = static_cast<double>(N);
  double prev = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double cur = spec(i == N ? 1.0 : static_cast<double>(i) / n);
    scales[static_cast<std::size_t>(i - 1)] = std::sqrt(std::max(0.0, n * (cur - prev)));
    prev = cur;
  }
  return scales;
}

DisorderSample::DisorderSample(int depth, std::vector<double> draws,
                               std::vector<double> scales)
    : depth_(depth), draws_(std::move(draws)), scales_(std::move(scales)) {
  check_depth(depth);
  const std::size_t nodes = (std::size_t{1} << (depth + 1)) - 2;
  if (draws_.size() != nodes || scales_.size() != static_cast<std::size_t>(depth)) {
    throw Error(ErrorKind::domain_error, "draw or scale count does not match depth");
  }
}

double DisorderSample::increment(int level, std::size_t index) const {
  if (level < 1 || level > depth_ || index >= (std::size_t{1} << level)) {
    throw Error(ErrorKind::domain_error, "node out of range");
  }
  const std::size_t offset = (std::size_t{1} << level) - 2;
  return scales_[static_cast<std::size_t>(level - 1)] * draws_[offset + index];
}

std::vector<double> DisorderSample::leaf_values() const {
  std::vector<double> out(std::size_t{1} << depth_, 0.0);
  for (int i = 1; i <= depth_; ++i) {
    const std::size_t width = std::size_t{1} << i;
    const double* g = draws_.data() + (width - 2);
    const double s = scales_[static_cast<std::size_t>(i - 1)];
    for (std::size_t j = width; j-- > 0;) out[j] = out[j >> 1] + s * g[j];
  }
  return out;
}

void tree_field(std::span<double> out, std::span<const double> scales, StreamEngine& eng,
                std::span<double> scratch) {
  boost::random::normal_distribution<double> normal;
  out[0] = 0.0;
  for (std::size_t i = 1; i <= scales.size(); ++i) {
    const std::size_t width = std::size_t{1} << i;
    for (std::size_t j = 0; j < width; ++j) scratch[j] = normal(eng);
    const double s = scales[i - 1];
    for (std::size_t j = width; j-- > 0;) out[j] = out[j >> 1] + s * scratch[j];
  }
}

namespace {

DisorderSample sample_with_scales(int N, std::vector<double> scales, std::uint64_t seed,
                                  const StreamKey& key) {
  StreamEngine eng(seed, key);
  boost::random::normal_distribution<double> normal;
  std::vector<double> draws((std::size_t{1} << (N + 1)) - 2);
  for (double& g : draws) g = normal(eng);
  return DisorderSample(N, std::move(draws), std::move(scales));
}

}  // namespace

DisorderSample sample_brw(int N, std::uint64_t seed, const StreamKey& key) {
  check_depth(N);
  return sample_with_scales(N, std::vector<double>(static_cast<std::size_t>(N), 1.0), seed,
                            key);
}

DisorderSample sample_crem(const CovarianceSpec& spec, int N, std::uint64_t seed,
                           const StreamKey& key) {
  return sample_with_scales(N, level_scales(spec, N), seed, key);
}

}  // namespace crem
