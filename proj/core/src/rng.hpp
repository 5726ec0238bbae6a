#pragma once

// Seed derivation and bounded draws. The engine is std::mt19937_64, whose
// output sequence is fixed by the standard; the distributions here are
// written out so results do not depend on the standard library vendor.

#include <cstdint>
#include <random>
#include <string_view>

namespace hierprobe::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Order-sensitive mixing of seed components.
class SeedBuilder {
 public:
  explicit SeedBuilder(std::uint64_t seed) : state_(splitmix64(seed)) {}

  SeedBuilder& add(std::uint64_t value) {
    state_ = splitmix64(state_ ^ splitmix64(value + 0x632be59bd9b4e019ULL));
    return *this;
  }
  SeedBuilder& add(std::string_view text) { return add(fnv1a(text)); }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in the open interval (0, 1) from 64 random bits.
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace hierprobe::detail
