// random.hpp: counter-based random streams for reproducible Monte Carlo.
//
// Every trial owns an independent stream keyed by (seed, trial index):
//
//   key      = mix(seed ^ mix(trial + G))
//   draw_k   = mix(key + (k + 1) * G)          k = 0, 1, 2, ...
//   uniform  = (draw_k >> 11) * 2^-53           in [0, 1)
//
// where mix is the SplitMix64 finalizer and G = 0x9e3779b97f4a7c15. Results
// depend only on (seed, trial, k), never on execution order or thread count.

#pragma once

#include <cstdint>

namespace onecount {

std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;

class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;  // [0, 1)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace onecount
