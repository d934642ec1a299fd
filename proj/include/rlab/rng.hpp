#pragma once

#include <cstdint>

namespace rlab {

// Counter-based streams: the draws for sample i depend only on (seed, tag, i),
// so any partition of the index range across workers yields the same values.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
      : state_(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ mix64(tag + 0x3c6ef372fe94f82bULL) ^
                     (index * 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, bound), bound >= 1. Lemire's multiply with rejection.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Stream tags keep unrelated consumers of one seed apart.
namespace stream_tag {
inline constexpr std::uint64_t random_hypergraph = 1;
inline constexpr std::uint64_t embed_mc = 2;
inline constexpr std::uint64_t polls = 3;
inline constexpr std::uint64_t regcurve = 4;
inline constexpr std::uint64_t generator = 5;
}  // namespace stream_tag

}  // namespace rlab
