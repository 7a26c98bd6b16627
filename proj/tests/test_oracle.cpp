#include <gtest/gtest.h>

#include <sstream>

#include "repgame/deviation_oracle.hpp"
#include "repgame/exploiter.hpp"
#include "repgame/learners.hpp"
#include "repgame/simulate.hpp"
#include "support.hpp"

using namespace repgame;

TEST(DeviationOracle, RandomSwitcherGeometricStay) {
  const Game g = coordination_game(3);
  const StrategyFactory f = [](std::uint64_t s) { return std::make_unique<RandomSwitcher>(0.2, 3, s); };
  const History h({{0, 1}});
  const DeviationForecast d = predict_deviation_horizon(f, h, g, 0.05, 16, 1000);
  EXPECT_EQ(d.sigma, 14u);
  EXPECT_FALSE(d.capped);
  EXPECT_NEAR(d.stay_probability, std::pow(0.8, 14), 1e-12);
}

TEST(DeviationOracle, ExploreThenCommitLeavesItsBlock) {
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  const StrategyFactory f = [&](std::uint64_t s) { return explore_then_commit(g, experts, 30, s); };
  const History h({{0, 2}, {0, 1}, {0, 0}});
  const DeviationForecast d = predict_deviation_horizon(f, h, g, 0.05, 8, 1000);
  EXPECT_EQ(d.sigma, 8u);
  EXPECT_FALSE(d.capped);
}

TEST(DeviationOracle, FixedLearnerIsCapped) {
  const Game g = coordination_game(3);
  const StrategyFactory f = [](std::uint64_t s) { return fixed_expert(1, 3, s); };
  const DeviationForecast d = predict_deviation_horizon(f, History({{1, 0}}), g, 0.05, 8, 500);
  EXPECT_TRUE(d.capped);
  EXPECT_EQ(d.sigma, 500u);
  EXPECT_EQ(d.stay_probability, 1.0);
}

TEST(DeviationOracle, RejectsBadArguments) {
  const Game g = coordination_game(3);
  const StrategyFactory f = [](std::uint64_t s) { return fixed_expert(1, 3, s); };
  EXPECT_THROW(predict_deviation_horizon(f, History{}, g, 0.05, 8, 10), std::invalid_argument);
  EXPECT_THROW(predict_deviation_horizon(f, History({{1, 0}}), g, 0.0, 8, 10), std::invalid_argument);
  EXPECT_THROW(predict_deviation_horizon(f, History({{1, 0}}), g, 0.05, 0, 10), std::invalid_argument);
}

TEST(Exploiter, IntervalDeltasHalve) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_EQ(interval_delta(0.1, i), 0.1 / std::pow(2.0, static_cast<double>(i + 1)));
    sum += interval_delta(0.1, i);
  }
  EXPECT_LE(sum, 0.1);
  std::vector<IntervalRecord> log;
  for (std::size_t i = 0; i < 40; ++i) log.push_back({i, i, 1, interval_delta(0.1, i), false, 0});
  EXPECT_TRUE(delta_budget_respected(log, 0.1));
  log[3].delta_i *= 2;
  EXPECT_FALSE(delta_budget_respected(log, 0.1));
}

TEST(Exploiter, MirrorsFixedExpertAfterStageLimit) {
  const Game g = coordination_game(3);
  const StrategyFactory alice = [](std::uint64_t s) { return fixed_expert(2, 3, s); };
  OracleParams oracle;
  oracle.stage_limit = 100;
  PredictiveExploiter bob(alice, g, 0.1, oracle, 5);
  FixedAction a(2, 3, 0);
  const Trajectory t = rollout(g, a, bob, 300, 11);
  ASSERT_EQ(bob.audit_log().size(), 1u);
  EXPECT_TRUE(bob.audit_log()[0].capped);
  EXPECT_EQ(bob.audit_log()[0].sigma, 100u);
  for (std::size_t i = 100; i < t.stages.size(); ++i) EXPECT_EQ(t.stages[i].payoff, 1.0) << i;
  EXPECT_TRUE(delta_budget_respected(bob.audit_log(), 0.1));
}

TEST(Exploiter, OpensIntervalOnEveryActionChange) {
  const Game g = coordination_game(3);
  const StrategyFactory alice = [](std::uint64_t s) { return std::make_unique<PeriodicSwitcher>(5, 3, s); };
  PredictiveExploiter bob(alice, g, 0.1, OracleParams{}, 1);
  PeriodicSwitcher a(5, 3, 0);
  const Trajectory t = rollout(g, a, bob, 50, 0);
  const auto& log = bob.audit_log();
  ASSERT_EQ(log.size(), 10u);
  for (std::size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(log[i].interval, i);
    EXPECT_EQ(log[i].start, 5 * i);
    EXPECT_EQ(log[i].action, static_cast<Action>(i % 3));
    // The switch is certain 5 stages ahead, so Bob never reaches the mirroring phase.
    EXPECT_EQ(log[i].sigma, 5u);
    EXPECT_FALSE(log[i].capped);
  }
  EXPECT_EQ(t.stages.size(), 50u);
  std::ostringstream out;
  write_audit_jsonl(out, log);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
  EXPECT_NE(text.find("\"sigma_i\":5"), std::string::npos);
}

TEST(Exploiter, ReplayContract) {
  const Game g = coordination_game(3);
  const StrategyFactory alice = [](std::uint64_t s) { return std::make_unique<RandomSwitcher>(0.3, 3, s); };
  OracleParams oracle;
  oracle.trials = 8;
  oracle.replicas = 2;
  oracle.sigma_cap = 200;
  const StrategyFactory bob = [&](std::uint64_t s) { return predictive_exploiter(alice, g, 0.1, oracle, s); };
  repgame::test_support::expect_replay_consistent(bob, g, false, 60, 3);
}
