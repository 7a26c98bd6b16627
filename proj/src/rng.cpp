#include "repgame/rng.hpp"

namespace repgame {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                Stream stream) noexcept {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  return mix64(h ^ mix64(trial_index + 0x632be59bd9b4e019ULL));
}

double unit_uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
  const std::uint64_t bits = mix64(mix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL + 1));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace repgame
