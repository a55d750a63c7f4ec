#pragma once

#include <array>
#include <cstdint>

namespace monowave {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3"). Output is a pure function of
/// (counter, key), so any stream position can be computed independently.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

/// Sequential view over one Philox stream.
///
/// The key is the 64-bit seed; counter words 2 and 3 hold the 64-bit stream
/// index, words 0 and 1 the block position. Monte Carlo drivers give trial t
/// the stream (seed, t), which makes every trial independent of execution
/// order.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; the second variate of each pair is kept.
  double gaussian();

 private:
  Philox4x32::Key key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace monowave
