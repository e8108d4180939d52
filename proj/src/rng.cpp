#include "drad/rng.hpp"

#include <cmath>
#include <numbers>

namespace drad {

std::uint64_t hash_seed(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x6A09E667F3BCC908ULL;
  for (std::uint64_t p : parts) {
    h = mix64(h ^ mix64(p + 0x9E3779B97F4A7C15ULL));
  }
  return h;
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t CounterRng::index(std::size_t n) noexcept {
  if (n <= 1) return 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t u = next_u64();
  while (u >= limit) u = next_u64();
  return static_cast<std::size_t>(u % bound);
}

long CounterRng::uniform_int(long lo, long hi) noexcept {
  return lo + static_cast<long>(index(static_cast<std::size_t>(hi - lo + 1)));
}

CounterRng::NormalPair CounterRng::normal_pair() noexcept {
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace drad
