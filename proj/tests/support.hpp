#pragma once

#include <gtest/gtest.h>

#include "repgame/partners.hpp"
#include "repgame/simulate.hpp"
#include "repgame/strategy.hpp"

namespace repgame::test_support {

/// Plays `factory` against a uniform opponent and checks that a fresh
/// instance replayed on every prefix reproduces the incremental policy.
inline void expect_replay_consistent(const StrategyFactory& factory, const Game& game, bool as_alice,
                                     std::size_t stages, std::uint64_t seed) {
  auto live = factory(seed);
  const int other = as_alice ? game.cols() : game.rows();
  auto opponent = uniform_partner(other, seed ^ 0x9e37u);
  History h;
  for (std::size_t t = 0; t < stages; ++t) {
    auto fresh = factory(seed);
    const ActionDistribution replayed = fresh->policy_at(h);
    const ActionDistribution incremental = live->policy();
    ASSERT_TRUE(replayed.probs().isApprox(incremental.probs(), 1e-12) ||
                (replayed.probs() - incremental.probs()).cwiseAbs().maxCoeff() < 1e-12)
        << "policy differs after " << t << " stages";
    const Action mine = live->draw();
    const Action theirs = opponent->draw();
    const JointAction stage = as_alice ? JointAction{mine, theirs} : JointAction{theirs, mine};
    live->observe(stage);
    opponent->observe(stage);
    h.push_back(stage);
  }
}

}  // namespace repgame::test_support
