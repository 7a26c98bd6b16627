#pragma once

#include <cstdint>

namespace repgame {

/// Randomness streams kept apart when deriving per-trial seeds.
enum class Stream : std::uint64_t {
  learner = 0x6c6561726e6572ULL,
  partner = 0x706172746e6572ULL,
  oracle = 0x6f7261636c65ULL,
  sampler = 0x73616d706c6572ULL,
  estimate = 0x657374696d617465ULL,
};

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for one (trial, stream) cell. Pure function of its arguments, so
/// trials can be evaluated in any order or on any worker.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                Stream stream) noexcept;

/// Counter-based uniform draw in [0, 1) with 53 random bits.
double unit_uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace repgame
