#pragma once

#include <cstdint>
#include <limits>

namespace tsel {

__extension__ using uint128_t = unsigned __int128;

// SplitMix64 (Steele, Lea, Flood).  Small state, so one stream per trial is
// cheap; trial streams are derived from (seed, trial index) so results do not
// depend on how trials are split across threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state = 0) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<uint128_t>((*this)()) * bound) >> 64);
  }

  // Fair coin.
  constexpr bool flip() { return ((*this)() >> 63) != 0; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline constexpr SplitMix64 trial_stream(std::uint64_t seed,
                                         std::uint64_t trial) {
  return SplitMix64(SplitMix64::mix(seed ^ 0xD1B54A32D192ED03ULL) ^
                    SplitMix64::mix(trial + 0x8CB92BA72F3D8DD7ULL));
}

}  // namespace tsel
