#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

// Counter-based random deviates. Every draw is a pure function of
// (seed, counters), so generation parallelizes and never depends on
// call order. The mixer is the splitmix64 finalizer; normals come from
// Box-Muller on two mixed 53-bit uniforms.

namespace hcmc {

/// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a short tag string.
constexpr std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stream seed for (master, purpose tag, index): three chained mix64 rounds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ hash_tag(tag)) ^ index);
}

/// Uniform in (0,1], 53-bit resolution.
inline double uniform_from_bits(std::uint64_t h) {
  return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal deviate addressed by (seed, row, col).
inline double gaussian_entry(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ row) ^ col);
  const std::uint64_t h2 = mix64(h ^ 0xd1b54a32d192ed03ULL);
  const double u1 = uniform_from_bits(h);
  const double u2 = uniform_from_bits(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Uniform in [0,1) addressed by (seed, index).
inline double uniform_entry(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(mix64(mix64(seed) ^ index) >> 11) * 0x1.0p-53;
}

}  // namespace hcmc
