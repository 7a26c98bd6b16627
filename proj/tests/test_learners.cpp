#include <gtest/gtest.h>

#include "repgame/learners.hpp"
#include "repgame/partners.hpp"
#include "repgame/simulate.hpp"
#include "support.hpp"

using namespace repgame;

TEST(FixedAction, AlwaysPlaysItsAction) {
  FixedAction e(1, 3, 0);
  EXPECT_EQ(e.policy_at(History({{0, 2}, {2, 1}})).probability(1), 1.0);
  EXPECT_TRUE(e.settled());
}

TEST(ExploreThenCommit, ExploresInBlocksThenCommitsToBestMean) {
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  ExploreThenCommit etc(g, experts, 30, EvalScheme::blocks, 0);
  EXPECT_EQ(etc.exploration_length(), 30u);
  // Bob always plays 2, so expert 2 has mean 1 and the rest 0.
  History h;
  for (int t = 0; t < 30; ++t) {
    const Action a = etc.draw();
    EXPECT_EQ(a, t / 10);
    etc.observe({a, 2});
    h.push_back({a, 2});
  }
  EXPECT_EQ(etc.committed_expert(), 2);
  EXPECT_TRUE(etc.settled());
  EXPECT_EQ(etc.draw(), 2);
}

TEST(ExploreThenCommit, TiesGoToTheLowestExpert) {
  const Game g = coordination_game(3);
  ExploreThenCommit etc(g, ExpertSet::fixed_actions(3), 3, EvalScheme::interleaved, 0);
  for (int t = 0; t < 3; ++t) etc.observe({etc.draw(), 0 == t ? 1 : 0});
  EXPECT_EQ(etc.committed_expert(), 0);
}

TEST(ExploreThenCommit, RejectsShortExploration) {
  EXPECT_THROW(ExploreThenCommit(coordination_game(4), ExpertSet::fixed_actions(4), 3, EvalScheme::blocks, 0),
               std::invalid_argument);
}

TEST(StrategicExperts, BoundaryMixesExplorationWithGreedy) {
  const Game g = coordination_game(3);
  StrategicExperts se(g, ExpertSet::fixed_actions(3), EpsilonSchedule{}, HorizonRule{}, 0);
  ASSERT_TRUE(se.at_boundary());
  // The first boundary prefers the first unevaluated expert.
  EXPECT_NEAR(se.probability(0), 0.7 + 0.1, 1e-12);
  EXPECT_NEAR(se.probability(1), 0.1, 1e-12);
}

TEST(StrategicExperts, SwitchesInfinitelyOftenAgainstUniform) {
  const Game g = coordination_game(3);
  auto se = strategic_experts(g, ExpertSet::fixed_actions(3), EpsilonSchedule{}, HorizonRule{}, 5);
  auto bob = uniform_partner(3, 6);
  const Trajectory t = rollout(g, *se, *bob, 4000, 0);
  std::size_t late_switches = 0;
  for (std::size_t i = 3001; i < t.stages.size(); ++i) late_switches += t.stages[i].alice != t.stages[i - 1].alice;
  EXPECT_GT(late_switches, 0u);
}

TEST(Mixed, CoinIsFairAndPersistent) {
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  int active = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    auto m = mixed_learner(fixed_expert(0, 3, s), fixed_expert(1, 3, s), 0.5, s);
    active += m->draw() == 1;
  }
  EXPECT_NEAR(active, 1000, 67);
}

TEST(CoinCommit, PicksOneActionForever) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto c = coin_commit(0, 1, 2, s);
    const Action first = c->draw();
    for (int t = 0; t < 20; ++t) {
      c->observe({first, 0});
      ASSERT_EQ(c->draw(), first);
    }
  }
}

TEST(Switchers, PeriodicAndRandom) {
  PeriodicSwitcher p(4, 3, 0);
  std::vector<Action> seen;
  for (int t = 0; t < 12; ++t) {
    seen.push_back(p.draw());
    p.observe({seen.back(), 0});
  }
  EXPECT_EQ(seen, (std::vector<Action>{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2}));
  RandomSwitcher r(0.25, 3, 0);
  EXPECT_EQ(r.probability(0), 1.0);
  r.observe({0, 0});
  EXPECT_NEAR(r.probability(0), 0.75, 1e-15);
  EXPECT_NEAR(r.probability(2), 0.125, 1e-15);
}

TEST(Learners, ReplayContract) {
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  const std::vector<StrategyFactory> zoo{
      [g, experts](std::uint64_t s) { return explore_then_commit(g, experts, 30, s); },
      [g, experts](std::uint64_t s) { return explore_then_commit(g, experts, 30, s, EvalScheme::interleaved); },
      [g, experts](std::uint64_t s) { return strategic_experts(g, experts, EpsilonSchedule{}, HorizonRule{}, s); },
      [g, experts](std::uint64_t s) {
        return mixed_learner(explore_then_commit(g, experts, 30, s),
                             strategic_experts(g, experts, EpsilonSchedule{}, HorizonRule{}, s), 0.5, s);
      },
      [](std::uint64_t s) { return std::make_unique<RandomSwitcher>(0.3, 3, s); },
  };
  for (const auto& f : zoo) {
    for (std::uint64_t seed : {1u, 2u, 3u}) test_support::expect_replay_consistent(f, g, true, 80, seed);
  }
}
