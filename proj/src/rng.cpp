#include "dhilbert/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dhilbert {

namespace {

constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
      counter_{0u, 0u, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

Philox4x32::Block Philox4x32::encrypt(Block c, Key k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(philox_m0, c[0], hi0, lo0);
    mulhilo(philox_m1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += philox_w0;
    k[1] += philox_w1;
  }
  return c;
}

Philox4x32::result_type Philox4x32::operator()() {
  if (next_ == 4) {
    buffer_ = encrypt(counter_, key_);
    if (++counter_[0] == 0 && ++counter_[1] == 0) throw std::overflow_error("Philox4x32: stream exhausted");
    next_ = 0;
  }
  return buffer_[next_++];
}

double RngStream::uniform() {
  const std::uint64_t hi = engine_() >> 5;  // 27 bits
  const std::uint64_t lo = engine_() >> 6;  // 26 bits
  const std::uint64_t bits = (hi << 26) | lo;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

double RngStream::exponential() { return -std::log(uniform()); }

int RngStream::sign() { return (engine_() >> 31) != 0 ? 1 : -1; }

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::below: n must be positive");
  return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
}

}  // namespace dhilbert
