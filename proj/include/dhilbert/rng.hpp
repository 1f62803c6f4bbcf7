#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dhilbert {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 64-bit key and the 64-bit stream id fix the sequence; the remaining
/// 64 counter bits index blocks of four 32-bit outputs within the stream.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t key, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Ten rounds of the Philox bijection on one counter block.
  static Block encrypt(Block counter, Key key);

 private:
  Key key_;
  Block counter_;
  Block buffer_{};
  unsigned next_ = 4;
};

/// Per-path random stream: a pure function of (master seed, path index).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t path_index) : engine_(master_seed, path_index) {}

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform();
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Exponential with unit rate.
  double exponential();
  /// Fair +1 / -1.
  int sign();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  Philox4x32 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace dhilbert
