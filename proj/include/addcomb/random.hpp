#pragma once

// Reproducible randomness. The standard distributions and std::shuffle are
// implementation-defined, so bounded draws and shuffles are done here by hand
// on top of mt19937_64, whose output sequence is fixed by the standard.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace addcomb::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for trial `index` of a run seeded with `seed`.
inline Engine stream(std::uint64_t seed, std::uint64_t index) {
  return Engine(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform in [0, bound), bound >= 1, by rejection.
inline std::uint64_t below(Engine& e, std::uint64_t bound) {
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  while (true) {
    const std::uint64_t x = e();
    if (x >= limit) return x % bound;
  }
}

/// Uniform in [lo, hi].
inline std::int64_t between(Engine& e, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(e, static_cast<std::uint64_t>(hi - lo) + 1));
}

template <class T>
void shuffle(Engine& e, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(e, i)]);
}

/// Uniform random permutation of {0, ..., n-1}.
inline std::vector<std::size_t> permutation(Engine& e, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  shuffle(e, p);
  return p;
}

/// k distinct values of {0, ..., n-1}, in random order.
inline std::vector<std::uint64_t> sample(Engine& e, std::uint64_t n, std::size_t k) {
  std::vector<std::uint64_t> all(n);
  for (std::uint64_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + below(e, n - i)]);
  all.resize(k);
  return all;
}

}  // namespace addcomb::rng
