#include "crem/rng.hpp"

namespace crem {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_id(const StreamKey& key) noexcept {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(key.purpose));
  h = splitmix64(h ^ key.replica);
  h = splitmix64(h ^ key.level);
  h = splitmix64(h ^ key.node);
  return h;
}

std::uint64_t child_node(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ (index + 1));
}

StreamEngine::StreamEngine(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

void StreamEngine::refill() noexcept {
  // Rounds run interleaved over kBlocks independent counters.
  std::uint32_t x0[kBlocks], x1[kBlocks], x2[kBlocks], x3[kBlocks];
  const auto s_lo = static_cast<std::uint32_t>(stream_);
  const auto s_hi = static_cast<std::uint32_t>(stream_ >> 32);
  for (int b = 0; b < kBlocks; ++b) {
    const std::uint64_t ctr = block_ + static_cast<std::uint64_t>(b);
    x0[b] = static_cast<std::uint32_t>(ctr);
    x1[b] = static_cast<std::uint32_t>(ctr >> 32);
    x2[b] = s_lo;
    x3[b] = s_hi;
  }
  std::uint32_t k0 = key_[0];
  std::uint32_t k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    for (int b = 0; b < kBlocks; ++b) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x0[b];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x2[b];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      x0[b] = hi1 ^ x1[b] ^ k0;
      x1[b] = lo1;
      x2[b] = hi0 ^ x3[b] ^ k1;
      x3[b] = lo0;
    }
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  for (int b = 0; b < kBlocks; ++b) {
    buf_[4 * b] = x0[b];
    buf_[4 * b + 1] = x1[b];
    buf_[4 * b + 2] = x2[b];
    buf_[4 * b + 3] = x3[b];
  }
  block_ += kBlocks;
  pos_ = 0;
}

double StreamEngine::uniform_open() noexcept {
  const std::uint64_t bits = (*this)() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace crem
