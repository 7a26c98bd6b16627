#include <gtest/gtest.h>

#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/simulate.hpp"
#include "repgame/learners.hpp"
#include "repgame/partners.hpp"

#include <sstream>

using namespace repgame;

TEST(Game, Example1Payoffs) {
  const Game g = example1_game();
  EXPECT_EQ(g.rows(), 2);
  EXPECT_EQ(g.cols(), 3);
  EXPECT_EQ(g.payoff(0, 0), 2.0);
  EXPECT_EQ(g.payoff(1, 1), 2.0);
  EXPECT_EQ(g.payoff(1, 2), 1.0);
  EXPECT_EQ(g.payoff(0, 1), 0.0);
  EXPECT_FALSE(g.has_unit_range());
  const Game n = example1_game(true);
  EXPECT_TRUE(n.has_unit_range());
  EXPECT_EQ(n.payoff(0, 0), 1.0);
  EXPECT_EQ(n.payoff(0, 2), 0.5);
}

TEST(Game, CoordinationGameIsIdentity) {
  const Game g = coordination_game(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) EXPECT_EQ(g.payoff(a, b), a == b ? 1.0 : 0.0);
  }
  EXPECT_TRUE(g.has_unit_range());
}

TEST(Game, RangeChecks) {
  EXPECT_THROW(require_unit_range(example1_game(), false), std::invalid_argument);
  EXPECT_TRUE(require_unit_range(example1_game(), true).has_unit_range());
  PayoffMatrix<double> m(1, 1);
  m << 3.0;
  EXPECT_THROW(Game(m, {0.0, 1.0}), std::invalid_argument);
}

TEST(Game, JsonRoundTrip) {
  const Game g = example1_game();
  EXPECT_TRUE(game_from_json(to_json(g)) == g);
}

TEST(History, ValidateRejectsOutOfRangeActions) {
  const Game g = coordination_game(3);
  History h({{0, 1}, {2, 2}});
  EXPECT_NO_THROW(h.validate(g));
  h.push_back({3, 0});
  EXPECT_THROW(h.validate(g), std::out_of_range);
}

TEST(Simulate, PointMassesGiveTheMatrixEntry) {
  const Game g = example1_game();
  FixedAction alice(0, 2, 1);
  StationaryPartner bob(ActionDistribution::point_mass(3, 0), 2);
  const Trajectory t = rollout(g, alice, bob, 5, 0);
  ASSERT_EQ(t.stages.size(), 5u);
  for (const auto& s : t.stages) EXPECT_EQ(s.payoff, 2.0);
}

TEST(Simulate, FixedAgainstGrimTriggerStaysCooperative) {
  const Game g = example1_game();
  FixedAction alice(0, 2, 1);
  GrimTrigger bob(example1_trigger(1), 3, 2);
  const Trajectory t = rollout(g, alice, bob, 100, 0);
  for (const auto& s : t.stages) EXPECT_EQ(s.payoff, 2.0);
}

TEST(Simulate, JsonlRoundTrip) {
  const Game g = coordination_game(3);
  auto alice = uniform_partner(3, 5);
  auto bob = uniform_partner(3, 6);
  const Trajectory t = rollout(g, *alice, *bob, 50, 9);
  std::stringstream buffer;
  write_jsonl(buffer, t);
  const Trajectory back = read_jsonl(buffer, g, 9);
  ASSERT_EQ(back.stages.size(), t.stages.size());
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    EXPECT_EQ(back.stages[i].alice, t.stages[i].alice);
    EXPECT_EQ(back.stages[i].bob, t.stages[i].bob);
    EXPECT_EQ(back.stages[i].payoff, t.stages[i].payoff);
  }
}

TEST(Simulate, SameSeedsGiveTheSameTrajectory) {
  const Game g = coordination_game(3);
  auto make = [&] {
    auto alice = uniform_partner(3, 11);
    auto bob = uniform_partner(3, 12);
    return rollout(g, *alice, *bob, 200, 0).history();
  };
  EXPECT_TRUE(make() == make());
}
