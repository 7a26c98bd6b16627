#include <gtest/gtest.h>

#include "repgame/estimation.hpp"
#include "repgame/machine.hpp"
#include "repgame/partners.hpp"
#include "repgame/simulate.hpp"

using namespace repgame;

TEST(Machine, Example1Grid) {
  const Game g = example1_game();
  const int expected[2][2] = {{2, 1}, {1, 2}};
  for (int e = 0; e < 2; ++e) {
    for (int w = 1; w <= 2; ++w) {
      EXPECT_EQ(exact_value(g, fsm_fixed(e, 3), fsm_grim_trigger(example1_trigger(w), 2)), expected[e][w - 1]);
    }
  }
}

TEST(Machine, PruningDropsUnreachableStates) {
  Fsm m{3, 0, {0, 1, 2}, {{0, 0}, {0, 0}, {1, 2}}};
  EXPECT_EQ(m.size(), 1);
  EXPECT_EQ(fsm_grim_trigger(example1_trigger(1), 2).size(), 2);
  EXPECT_EQ(fsm_mirror(2, 0).size(), 2);
}

TEST(Machine, ValidationErrors) {
  Fsm bad{2, 0, {0, 5}, {{0, 1}, {1, 1}}};
  EXPECT_THROW(bad.validate(3, 2), std::invalid_argument);
  Fsm ragged{1, 0, {0}, {{0}}};
  EXPECT_THROW(ragged.validate(3, 2), std::invalid_argument);
  EXPECT_THROW(Belief({{fsm_fixed(0, 3), Rational(1, 3)}}), std::invalid_argument);
}

TEST(Machine, CycleAverageDoubleAgreesWithExact) {
  const Game g = coordination_game(3);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Fsm a = random_fsm(1 + static_cast<int>(s % 4), 3, 3, s);
    const Fsm b = random_fsm(1 + static_cast<int>((s / 4) % 4), 3, 3, s + 1000);
    const Rational exact = exact_value(g, a, b);
    const double approx = cycle_average(g.matrix(), a, b).value;
    EXPECT_NEAR(approx, to_double(exact), 1e-12);
  }
}

TEST(Machine, ExactValueMatchesSimulation) {
  const Game g = coordination_game(3);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Fsm a = random_fsm(3, 3, 3, s);
    const Fsm b = random_fsm(4, 3, 3, s + 77);
    const auto cycle = exact_cycle(g, a, b);
    FsmStrategy alice(a, Role::alice, 3, 0);
    FsmStrategy bob(b, Role::bob, 3, 0);
    const std::size_t start = cycle.transient;
    const std::size_t length = cycle.cycle_length * 10;
    const Trajectory t = rollout(g, alice, bob, start + length, 0);
    double sum = 0.0;
    for (std::size_t i = start; i < t.stages.size(); ++i) sum += t.stages[i].payoff;
    EXPECT_NEAR(sum / static_cast<double>(length), to_double(cycle.value), 1e-12);
  }
}

TEST(Machine, EncodersReproducePartners) {
  const Game g = coordination_game(3);
  SwitchingPartner sw({4, 1, 3, Action{2}}, 0);
  const Fsm m = fsm_encode(sw, 3);
  EXPECT_EQ(m.states, 6);
  FsmStrategy fsm(m, Role::bob, 3, 0);
  History h;
  for (int t = 0; t < 40; ++t) {
    const Action a = static_cast<Action>((t * 7 + t / 5) % 3);
    const ActionDistribution want = sw.policy_at(h);
    const ActionDistribution got = fsm.policy_at(h);
    for (Action b = 0; b < 3; ++b) EXPECT_EQ(want.probability(b), got.probability(b)) << "stage " << t;
    h.push_back({a, 0});
  }
  SwitchingPartner uniform_phase({4, 1, 3, std::nullopt}, 0);
  EXPECT_THROW(fsm_encode(uniform_phase, 3), NotEncodable);
  auto uni = uniform_partner(3, 0);
  EXPECT_THROW(fsm_encode(*uni, 3), NotEncodable);
}

TEST(Machine, ExactValueMatchesMonteCarloForEncodablePartner) {
  const Game g = coordination_game(3);
  const StrategyFactory bob = [](std::uint64_t s) { return switching_partner({5, 0, 3, Action{1}}, s); };
  const StrategyFactory alice = [](std::uint64_t s) { return std::make_unique<FsmStrategy>(fsm_fixed(0, 3), Role::alice, 3, s); };
  EstimationParams p;
  p.trials = 4;
  p.horizon = 1000;
  const ValueEstimate v = estimate_value(g, alice, bob, History{}, p);
  const Rational exact = exact_value(g, fsm_fixed(0, 3), fsm_switching({5, 0, 3, Action{1}}));
  EXPECT_EQ(exact, 1);
  EXPECT_EQ(v.tail_mean, to_double(exact));
}

TEST(Rationality, GrimTriggerFailsWithAlwaysB1Witness) {
  const Game g = example1_game();
  const Belief sure({{fsm_fixed(0, 3), Rational(1)}});
  auto candidates = all_one_state_machines(3, 2);
  const auto v = is_computationally_rational(g, fsm_grim_trigger(example1_trigger(1), 2), sure, candidates);
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(candidates[*v.witness].output[0], 0);
  EXPECT_EQ(v.value, 2);
}

TEST(Rationality, MirrorPassesUnderEvenBelief) {
  const Game g = example1_game();
  const Belief even({{fsm_fixed(0, 3), Rational(1, 2)}, {fsm_fixed(1, 3), Rational(1, 2)}});
  auto candidates = all_one_state_machines(3, 2);
  for (auto& m : all_machines(2, 3, 2)) candidates.push_back(std::move(m));
  const auto v = is_computationally_rational(g, fsm_mirror(2, 0), even, candidates);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.value, 2);
}

TEST(Rationality, EqualValueSmallerMachineDominates) {
  const Game g = example1_game();
  const Belief sure({{fsm_fixed(0, 3), Rational(1)}});
  // A padded always-b1 machine with an unreachable state still has size 1.
  Fsm padded{2, 0, {0, 2}, {{0, 0}, {1, 1}}};
  EXPECT_TRUE(is_computationally_rational(g, padded, sure, all_one_state_machines(3, 2)).pass);
  // Grim trigger ties always-b1 on value but is larger.
  Fsm bigger = fsm_grim_trigger(example1_trigger(1), 2);
  EXPECT_FALSE(is_computationally_rational(g, bigger, sure, {fsm_fixed(0, 2)}).pass);
}

TEST(Machine, AllMachinesCount) {
  EXPECT_EQ(all_machines(2, 3, 2).size(), 2u * 9u * 16u);
  EXPECT_EQ(all_machines(1, 3, 2).size(), 3u);
  EXPECT_THROW(all_machines(5, 5, 5, 1000), std::invalid_argument);
}

TEST(Machine, JsonRoundTrip) {
  const Fsm m = fsm_grim_trigger(example1_trigger(2), 2);
  const Fsm back = fsm_from_json(to_json(m));
  EXPECT_EQ(back.states, m.states);
  EXPECT_EQ(back.output, m.output);
  EXPECT_EQ(back.transition, m.transition);
}
