#include <gtest/gtest.h>

#include "repgame/estimation.hpp"
#include "repgame/machine.hpp"
#include "repgame/partners.hpp"

using namespace repgame;

namespace {

EstimationParams budget(std::size_t trials, std::size_t horizon, ValueKind kind = ValueKind::mean) {
  EstimationParams p;
  p.trials = trials;
  p.horizon = horizon;
  p.value_kind = kind;
  p.seed = 17;
  return p;
}

Trajectory scripted(const Game& g, const std::vector<std::pair<Action, Action>>& moves) {
  Trajectory t{g, {}, 0};
  for (auto [a, b] : moves) t.stages.push_back({a, b, g.payoff(a, b)});
  return t;
}

}  // namespace

TEST(Estimation, FixedExpertAgainstGrimTrigger) {
  const Game g = example1_game();
  const StrategyFactory a1 = [](std::uint64_t s) { return fixed_expert(0, 2, s); };
  const StrategyFactory phi1 = [](std::uint64_t s) { return grim_trigger(example1_trigger(1), 3, s); };
  const ValueEstimate v = estimate_value(g, a1, phi1, History{}, budget(10, 100));
  EXPECT_EQ(v.mean, 2.0);
  EXPECT_EQ(v.tail_mean, 2.0);
  EXPECT_EQ(v.ci_half_width, 0.0);
  EXPECT_EQ(v.samples.size(), 10u);
  // Conditioned on a deviation, the punishment phase is all that remains.
  const ValueEstimate after = estimate_value(g, a1, phi1, History({{1, 0}}), budget(10, 100));
  EXPECT_EQ(after.mean, 1.0);
}

TEST(Estimation, UniformPlayInCoordination) {
  const Game g = coordination_game(4);
  const StrategyFactory u = [](std::uint64_t s) { return uniform_partner(4, s); };
  const ValueEstimate v = estimate_value(g, u, u, History{}, budget(400, 200));
  EXPECT_NEAR(v.mean, 0.25, 3 * v.ci_half_width);
  EXPECT_GT(v.ci_half_width, 0.0);
}

TEST(Estimation, ParallelismDoesNotChangeResults) {
  const Game g = coordination_game(3);
  const StrategyFactory u = [](std::uint64_t s) { return uniform_partner(3, s); };
  EstimationParams p = budget(64, 100);
  const ValueEstimate a = estimate_value(g, u, u, History{}, p);
  p.parallelism = 4;
  const ValueEstimate b = estimate_value(g, u, u, History{}, p);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.mean, b.mean);
}

TEST(Estimation, SwitchingPartnerMatchesExactFsmValue) {
  const Game g = coordination_game(3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Fsm alice = random_fsm(3, 3, 3, s);
    const SwitchingSpec spec{4, static_cast<Action>(s % 3), 3, Action{static_cast<Action>((s + 1) % 3)}};
    const StrategyFactory pi = [&](std::uint64_t seed) { return std::make_unique<FsmStrategy>(alice, Role::alice, 3, seed); };
    const StrategyFactory phi = [&](std::uint64_t seed) { return switching_partner(spec, seed); };
    const ValueEstimate v = estimate_value(g, pi, phi, History{}, budget(2, 6000));
    EXPECT_NEAR(v.tail_mean, to_double(exact_value(g, alice, fsm_switching(spec))), 1e-2) << s;
  }
}

TEST(Estimation, Ci95) {
  EXPECT_EQ(ci95({1.0}), 0.0);
  EXPECT_EQ(ci95({2.0, 2.0, 2.0}), 0.0);
  EXPECT_NEAR(ci95({0.0, 1.0}), 1.96 * std::sqrt(0.5) / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(sample_mean({1.0, 2.0, 3.0}), 2.0);
}

TEST(ExternalRegret, HandComputedBatch) {
  const Game g = coordination_game(2);
  // Alice always plays 0; Bob plays 1 in 3 of 5 stages.
  const Trajectory t = scripted(g, {{0, 1}, {0, 0}, {0, 1}, {0, 0}, {0, 1}});
  const ExternalRegret r = external_regret({t}, g, {0, 1});
  EXPECT_NEAR(r.value, 0.2, 1e-12);
  EXPECT_EQ(r.best_action, 1);
  const Trajectory u = scripted(g, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 1}});
  const ExternalRegret both = external_regret({t, u}, g, {0, 1});
  // Per trajectory: 0.2 and -0.6 for action 1, 0 and 0 for action 0.
  EXPECT_NEAR(both.value, 0.0, 1e-12);
  EXPECT_EQ(both.best_action, 0);
}

TEST(ExternalRegret, MatchingLearnerHasNone) {
  const Game g = coordination_game(3);
  const StrategyFactory a = [](std::uint64_t s) { return fixed_expert(1, 3, s); };
  const StrategyFactory b = [](std::uint64_t s) { return mirror_partner(3, 3, 0, s); };
  const ExternalRegret r = external_regret(g, a, b, {0, 1, 2}, budget(8, 100));
  EXPECT_LE(r.value, 0.0);
  EXPECT_EQ(r.best_action, 1);
}

TEST(AdaptiveRegret, BestExpertHasNone) {
  const Game g = example1_game();
  const StrategyFactory a1 = [](std::uint64_t s) { return fixed_expert(0, 2, s); };
  const StrategyFactory phi1 = [](std::uint64_t s) { return grim_trigger(example1_trigger(1), 3, s); };
  const RegretEstimate r = adaptive_regret(g, a1, phi1, ExpertSet::fixed_actions(2), budget(10, 200, ValueKind::tail));
  EXPECT_LE(r.value, r.ci);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.best_expert, 0u);
  EXPECT_EQ(r.experts.size(), 2u);
}

TEST(AdaptiveRegret, TypeConditionalExample1) {
  const Game g = example1_game();
  const StrategyFactory coin = [](std::uint64_t s) { return coin_commit(0, 1, 2, s); };
  const std::vector<StrategyFactory> types{
      [](std::uint64_t s) { return grim_trigger(example1_trigger(1), 3, s); },
      [](std::uint64_t s) { return grim_trigger(example1_trigger(2), 3, s); }};
  const TypedRegret r = type_conditional_regret(g, coin, types, {1.0, 1.0}, ExpertSet::fixed_actions(2),
                                                budget(400, 100, ValueKind::tail));
  EXPECT_EQ(r.weights, (std::vector<double>{0.5, 0.5}));
  ASSERT_EQ(r.per_type.size(), 2u);
  EXPECT_NEAR(r.value, 0.5, 3 * r.ci);
  EXPECT_GT(r.ci, 0.0);
  EXPECT_THROW(type_conditional_regret(g, coin, types, {1.0}, ExpertSet::fixed_actions(2), budget(4, 10)),
               std::invalid_argument);
}

TEST(OpenEndedRegret, FixedPartnerMatchesAdaptive) {
  const Game g = coordination_game(3);
  const StrategyFactory a = [](std::uint64_t s) { return fixed_expert(0, 3, s); };
  const StrategyFactory b = [](std::uint64_t s) { return stationary_partner(ActionDistribution::point_mass(3, 2), s); };
  const OpenEndedRegret r = open_ended_regret(g, a, b, {0, 1, 2}, 2, budget(4, 50, ValueKind::tail));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_FALSE(r.partial);
  EXPECT_EQ(r.guaranteed[2], 1.0);
  const OpenEndedRegret cut = open_ended_regret(g, a, b, {0, 1, 2}, 2, budget(4, 50, ValueKind::tail), 3);
  EXPECT_TRUE(cut.partial);
}

TEST(CommitTime, LastSwitchIndex) {
  const Game g = coordination_game(2);
  EXPECT_EQ(last_switch_index(scripted(g, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 0}})), 2u);
  EXPECT_EQ(last_switch_index(scripted(g, {{1, 0}, {1, 1}})), 0u);
  EXPECT_EQ(last_switch_index(scripted(g, {{1, 0}, {0, 1}})), 1u);
}

TEST(CommitTime, ExploreThenCommitCommitsAfterExploration) {
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  const StrategyFactory etc = [&](std::uint64_t s) { return explore_then_commit(g, experts, 30, s); };
  const StrategyFactory u = [](std::uint64_t s) { return uniform_partner(3, s); };
  const CommitTime c = estimate_commit_time(g, etc, u, 0.05, 200, 400, 3);
  EXPECT_FALSE(c.degenerate);
  EXPECT_EQ(c.gamma_hat, 0.0);
  EXPECT_LE(c.tau, 30u);
  EXPECT_GE(c.tau, 20u);
  double total = 0.0;
  for (double p : c.p) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CommitTime, CoinCommitIsImmediate) {
  const Game g = coordination_game(3);
  const StrategyFactory coin = [](std::uint64_t s) { return coin_commit(0, 1, 3, s); };
  const StrategyFactory u = [](std::uint64_t s) { return uniform_partner(3, s); };
  const CommitTime c = estimate_commit_time(g, coin, u, 0.05, 400, 100, 3);
  EXPECT_EQ(c.tau, 0u);
  EXPECT_EQ(c.gamma_hat, 0.0);
  EXPECT_NEAR(c.p[0], 0.5, 0.1);
  EXPECT_EQ(c.p[2], 0.0);
}

TEST(CommitTime, PeriodicSwitcherIsDegenerate) {
  const Game g = coordination_game(3);
  const StrategyFactory per = [](std::uint64_t s) { return std::make_unique<PeriodicSwitcher>(10, 3, s); };
  const StrategyFactory u = [](std::uint64_t s) { return uniform_partner(3, s); };
  const CommitTime c = estimate_commit_time(g, per, u, 0.05, 20, 200, 3);
  EXPECT_EQ(c.gamma_hat, 1.0);
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.tau, 0u);
}
