#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace stochprice {

/// Identifies one reproducible random sequence. Equal (seed, stream_id)
/// pairs always yield equal sequences.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// The 64-bit seed is the key. The 128-bit counter is split into a 64-bit
/// block index (low words) and the 64-bit stream id (high words), so every
/// stream is a disjoint slice of the same keyed permutation. Each block
/// produces four 32-bit outputs.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(SeededStream stream) noexcept
      : key_{static_cast<std::uint32_t>(stream.seed),
             static_cast<std::uint32_t>(stream.seed >> 32)},
        stream_hi_{static_cast<std::uint32_t>(stream.stream_id),
                   static_cast<std::uint32_t>(stream.stream_id >> 32)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (index_ == 4) {
      const Block ctr{static_cast<std::uint32_t>(block_),
                      static_cast<std::uint32_t>(block_ >> 32), stream_hi_[0],
                      stream_hi_[1]};
      buffer_ = bijection(ctr, key_);
      ++block_;
      index_ = 0;
    }
    return buffer_[index_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    const std::uint64_t lo = (*this)();
    return (hi << 32) | lo;
  }

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double next_uniform() noexcept {
    constexpr double kScale = 0x1.0p-53;
    return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
  }

  /// The raw keyed permutation: 10 Philox rounds over one counter block.
  static Block bijection(Block ctr, Key key) noexcept {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  Key key_;
  std::array<std::uint32_t, 2> stream_hi_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int index_ = 4;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  return mix_seed(base ^ mix_seed(tag));
}

/// Standard normal quantile. Acklam's rational approximation followed by one
/// Halley step against erfc, which brings it to near machine precision.
inline double normal_quantile(double p) noexcept {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  // 1 - p is exact for p in [0.5, 1), so the upper half reuses the lower tail.
  if (p > 0.5) return -normal_quantile(1.0 - p);

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowTail = 0.02425;

  double x;
  if (p < kLowTail) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

/// One standard normal variate per uniform (inverse-CDF transform).
inline double standard_normal(Philox4x32& rng) noexcept {
  return normal_quantile(rng.next_uniform());
}

/// Exponential variate with the given mean.
inline double exponential_with_mean(Philox4x32& rng, double mean) noexcept {
  return -mean * std::log(rng.next_uniform());
}

/// Uniform integer in [0, n) by Lemire's nearly-divisionless method.
inline std::uint64_t uniform_index(Philox4x32& rng, std::uint64_t n) noexcept {
  auto draw = [&] { return static_cast<std::uint32_t>(rng()); };
  if (n <= 0xFFFFFFFFull) {
    const auto bound = static_cast<std::uint32_t>(n);
    std::uint64_t m = std::uint64_t{draw()} * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        m = std::uint64_t{draw()} * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return m >> 32;
  }
  // Not needed for realistic series lengths; plain rejection.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng.next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace stochprice
