#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace drad {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Order-sensitive hash of a key path, e.g. (master_seed, class, snr, split, i).
std::uint64_t hash_seed(std::initializer_list<std::uint64_t> parts) noexcept;

/// Counter-based generator: the k-th 64-bit draw (k = 0, 1, ...) is
/// mix64(key + (k + 1) * 0x9E3779B97F4A7C15), i.e. the SplitMix64 stream
/// seeded with `key`. Any draw is a pure function of (key, k), so streams can
/// be split across threads without coordination.
///
/// Derived variates:
///   uniform()  = (u >> 11) * 2^-53                       in [0, 1)
///   normal pair (Box-Muller, two draws u1, u2):
///     r = sqrt(-2 ln(((u1 >> 11) + 1) * 2^-53)),  theta = 2 pi uniform(u2)
///     (r cos theta, r sin theta)
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), unbiased (rejection on the top of the range).
  std::size_t index(std::size_t n) noexcept;

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) noexcept;

  /// One Box-Muller pair of independent standard normals.
  struct NormalPair {
    double first;
    double second;
  };
  NormalPair normal_pair() noexcept;

  template <typename T>
  const T& pick(std::span<const T> values) noexcept {
    return values[index(values.size())];
  }

  /// Derives an independent generator for a named sub-stream.
  CounterRng fork(std::uint64_t stream) const noexcept {
    return CounterRng(hash_seed({key_, stream}));
  }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~0ULL; }
  std::uint64_t operator()() noexcept { return next_u64(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seeded Fisher-Yates shuffle using CounterRng::index (portable, unlike
/// std::shuffle whose draw pattern is library-specific).
template <typename T>
void shuffle(std::span<T> values, CounterRng& rng) noexcept {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace drad
