#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fovlap {

// splitmix64 finalizer. Also used to hash (seed, index, ...) tuples into
// decorrelated stream identifiers.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t word) {
  return mix64(seed ^ (word + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Stream identifiers for counter-based seeding: every Monte Carlo sample and
// every camera within a sample gets its own stream, so results do not depend
// on evaluation order or worker count.
inline constexpr std::uint64_t sample_stream(std::uint64_t master_seed, std::uint64_t sample_index) {
  return combine_seed(combine_seed(master_seed, 0x73616d706c65ULL), sample_index);
}

inline constexpr std::uint64_t camera_stream(std::uint64_t master_seed, std::uint64_t sample_index,
                                             std::uint64_t camera_index) {
  return combine_seed(sample_stream(master_seed, sample_index), camera_index);
}

// Deterministic random stream: splitmix64 core with hand-rolled Box-Muller
// normals. std::normal_distribution is implementation-defined, which would
// break bit-exact replay across standard libraries.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t stream_id) : state_(stream_id) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1], safe as a log() argument
  double next_open_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_open_unit()));
    const double phi = 2.0 * std::numbers::pi * next_unit();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fovlap
