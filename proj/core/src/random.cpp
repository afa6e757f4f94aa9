#include "onecount/random.hpp"

namespace onecount {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept
    : key_(splitmix64_mix(seed ^ splitmix64_mix(trial + kGolden))) {}

std::uint64_t TrialStream::next_u64() noexcept { return splitmix64_mix(key_ + (++counter_) * kGolden); }

double TrialStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace onecount
