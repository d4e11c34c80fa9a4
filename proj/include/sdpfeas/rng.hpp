#pragma once

#include <array>
#include <cstdint>

namespace sdpfeas {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: the output block is a pure
// function of (key, counter), so any trial can be regenerated independently of
// every other trial and of evaluation order.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Block operator()(Block counter) const noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
};

// Uniform doubles in [0, 1) for one (seed, stream) pair, generated from a
// counter that advances one block per two doubles.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : philox_(seed), stream_(stream) {}

  double next_uniform() noexcept;

 private:
  Philox4x32 philox_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int used_ = 4;
};

}  // namespace sdpfeas
