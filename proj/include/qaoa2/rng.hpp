#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

namespace qaoa2 {

// splitmix64 finalizer; bijective on 64-bit words.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from a master seed, a stream name,
/// and up to two numeric qualifiers (level, block index, restart index, ...).
/// Every random choice in the library draws from a stream derived this way,
/// which makes whole runs reproducible from the single master seed and keeps
/// concurrent block solves bit-identical regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  // FNV-1a over the stream name, mixed into the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = splitmix64(master ^ h);
  s = splitmix64(s + a);
  return splitmix64(s + b);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view stream,
                                   std::uint64_t a = 0, std::uint64_t b = 0) {
  return std::mt19937_64(derive_seed(master, stream, a, b));
}

/// Uniform integer in [0, bound) by rejection. Hand-rolled so that results do
/// not depend on the standard library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  // 2^64 mod bound values at the low end are rejected to remove bias.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return (r - threshold) % bound;
  }
}

/// Uniform double in [lo, hi), 53-bit resolution.
inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
  const double u = double(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = std::size_t(uniform_below(gen, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace qaoa2
