#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace fairgen {

// Seeded sampling helpers. std::mt19937_64 is fully specified by the
// standard; the bounded draw and the shuffle are done here rather than through
// std::uniform_int_distribution/std::shuffle, whose outputs vary between
// standard library implementations.

inline std::uint64_t bounded_draw(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x < threshold);
  return x % bound;
}

// Fisher-Yates permutation of 0..n-1.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 engine(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(engine, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

// min(k, n) distinct indices of 0..n-1, in ascending order.
inline std::vector<std::size_t> seeded_sample(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> picked = seeded_permutation(n, seed);
  if (k < n) picked.resize(k);
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace fairgen
