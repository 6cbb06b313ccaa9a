#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace wicketsim {

/// SplitMix64 finalizer. Used to derive substream seeds and counter-based uniforms.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a sequence of keys into one 64-bit value. Order matters.
constexpr std::uint64_t derive_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(seed);
  for (auto k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

/// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t hash_id(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Maps 64 random bits to the open interval (0, 1).
constexpr double bits_to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// A seeded random stream. Every variate is produced from raw engine output by
/// code in this library, so a given seed yields the same sequence on any
/// standard library implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream keyed by (seed, keys...).
  static RngStream substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    return RngStream(derive_key(seed, keys));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() { return bits_to_open_unit(engine_()); }

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wicketsim
