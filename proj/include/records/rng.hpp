#pragma once

// Deterministic random streams.
//
// SplitMix64 is a counter-style generator: the state advances by the fixed
// odd constant kGamma on every call and the output is mix64(state). A stream
// is therefore fully described by one 64-bit word, and (seed -> outcome) is
// stable as long as callers consume draws in a fixed order.
//
// Independent replica streams are keyed by (seed, replica index):
//   state0 = mix64(mix64(seed) ^ (index * kGamma))

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace records {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

/// Stafford variant 13 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  [[nodiscard]] constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Sub-stream for replica `index` of a run seeded with `seed`.
constexpr SplitMix64 replica_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64{mix64(mix64(seed) ^ (index * kGamma))};
}

/// Uniform integer in [0, bound), bound > 0. Lemire's multiply-and-reject
/// method; exact (no modulo bias).
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uint64_t x = rng();
  unsigned __int128 product = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      product = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One draw; p <= 0 never succeeds, p >= 1 always does.
template <class Rng>
bool bernoulli(Rng& rng, double p) {
  return uniform01(rng) < p;
}

/// Fisher-Yates, descending index.
template <class T, class Rng>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace records
