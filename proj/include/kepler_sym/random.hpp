#pragma once

// Seeded streams. Every random draw in the library and its test drivers
// comes from stream_rng(seed, stream, index), so a case depends only on its
// own index and never on scheduling.

#include <cstdint>
#include <random>
#include <string_view>

namespace kepler_sym {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, for naming streams.
inline std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream_id(stream) ^ splitmix64(index))));
}

// Uniform draw in [lo, hi) without std::uniform_real_distribution, whose
// output is not pinned by the standard.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace kepler_sym
