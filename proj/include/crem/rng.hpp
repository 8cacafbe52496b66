#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace crem {

/// Philox4x32-10 block function (Salmon et al., counter-based RNG).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// What a stream of random numbers is used for. Part of the stream key so
/// that e.g. the Hamiltonian draws never alias the cascade atoms.
enum class Purpose : std::uint32_t {
  hamiltonian = 1,
  field = 2,
  atoms = 3,
  functional = 4,
  brw = 5,
};

/// Identifies one independent stream below a seed.
struct StreamKey {
  std::uint64_t replica = 0;
  std::uint32_t level = 0;
  std::uint64_t node = 0;
  Purpose purpose = Purpose::hamiltonian;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit stream identifier mixed from all key fields.
std::uint64_t stream_id(const StreamKey& key) noexcept;

/// Child node identifier used to address cascade nodes independently of
/// the truncation level: the K-children tree is a subtree of the 2K one.
std::uint64_t child_node(std::uint64_t parent, std::uint64_t index) noexcept;

/// UniformRandomBitGenerator over one Philox stream. The 128-bit counter
/// holds (block index, stream id); the key is the seed.
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  StreamEngine(std::uint64_t seed, const StreamKey& key) noexcept
      : StreamEngine(seed, stream_id(key)) {}
  StreamEngine(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (pos_ == kBlocks * 4) refill();
    const result_type hi = buf_[pos_];
    const result_type lo = buf_[pos_ + 1];
    pos_ += 2;
    return (hi << 32) | lo;
  }

  /// Uniform double in (0, 1) built from 53 random bits.
  double uniform_open() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  static constexpr int kBlocks = 8;  // blocks generated per refill
  std::array<std::uint32_t, 4 * kBlocks> buf_{};
  int pos_ = 4 * kBlocks;
};

}  // namespace crem
