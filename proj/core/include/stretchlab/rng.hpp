#pragma once

#include <array>
#include <cstdint>

namespace stretchlab {

// Deterministic random number generation.
//
// Every random quantity in the library is drawn from an xoshiro256++ stream
// whose 256-bit state is expanded from a 64-bit stream seed with SplitMix64.
// Stream seeds are derived from a master seed by the pure function
// derive_seed(master, tag, a, b) below, so any sub-stream can be recreated
// in isolation (per vertex, per trial, ...) and results do not depend on
// execution order or thread count.
//
// Layout of the streams used by the generators:
//   derive_seed(seed, stream::kPoint,  i)        position of vertex i
//   derive_seed(seed, stream::kEdge)             Bernoulli edge draws, pairs
//                                                (i,j), i<j, in lexicographic
//                                                order, one uniform per pair
//   derive_seed(seed, stream::kAssign, t)        partition element of the
//                                                t-th secondary vertex
//   derive_seed(seed, stream::kPlace,  t)        placement of the t-th
//                                                secondary vertex
//   derive_seed(master, stream::kTrial, n, t)    seed of trial t at size n

// Finalizer of SplitMix64 (Steele, Lea, Flood 2014). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace stream {
inline constexpr std::uint64_t kPoint = 1;
inline constexpr std::uint64_t kEdge = 2;
inline constexpr std::uint64_t kAssign = 3;
inline constexpr std::uint64_t kPlace = 4;
inline constexpr std::uint64_t kTrial = 5;
}  // namespace stream

// Stream-seed derivation: three chained mix64 rounds, each folding in one
// component scaled by a fixed odd constant. Pure and platform-independent.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL * (tag + 1));
  h = mix64(h ^ (0xd1b54a32d192ed03ULL * (a + 1)));
  h = mix64(h ^ (0x8cb92ba72f3d8dd7ULL * (b + 1)));
  return h;
}

// xoshiro256++ (Blackman, Vigna 2019). State seeded via SplitMix64 so that
// nearby seeds give unrelated streams.
class Xoshiro256PlusPlus {
 public:
  explicit Xoshiro256PlusPlus(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // True with probability p. p = 0 never fires, p = 1 always does.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace stretchlab
