#ifndef QEMBED_RNG_HPP
#define QEMBED_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Deterministic random helpers. std::mt19937_64 is fully specified by the
// standard, but std::uniform_int_distribution, std::normal_distribution and
// std::shuffle are not; their output may differ between standard libraries.
// Everything that has to be bit-reproducible across platforms goes through
// the routines below instead.

namespace qembed::rng {

// Unbiased draw from [0, n) via multiply-then-reject.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(gen()) * static_cast<unsigned __int128>(n);
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

// Uniform double in [0, 1) with 53 random mantissa bits.
inline double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch only).
inline double gaussian(std::mt19937_64& gen) {
  const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = unit_double(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

template <typename T>
void fisher_yates(std::vector<T>& items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded(gen, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace qembed::rng

#endif  // QEMBED_RNG_HPP
