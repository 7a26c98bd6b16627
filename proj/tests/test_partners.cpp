#include <gtest/gtest.h>

#include <functional>

#include "repgame/learners.hpp"
#include "repgame/partners.hpp"
#include "support.hpp"

using namespace repgame;

namespace {

void for_all_histories(const Game& g, std::size_t max_length, const std::function<void(const History&)>& visit) {
  std::function<void(History&)> rec = [&](History& h) {
    visit(h);
    if (h.size() == max_length) return;
    for (Action a = 0; a < g.rows(); ++a) {
      for (Action b = 0; b < g.cols(); ++b) {
        History next = h;
        next.push_back({a, b});
        rec(next);
      }
    }
  };
  History empty;
  rec(empty);
}

}  // namespace

TEST(GrimTrigger, CooperatesUntilFirstDeviation) {
  GrimTrigger phi1(example1_trigger(1), 3, 0);
  EXPECT_EQ(phi1.policy_at(repeated(History{}, {0, 0}, 5)).probability(0), 1.0);
  History h = repeated(History{}, {0, 0}, 3);
  h.push_back({1, 0});
  h.push_back({0, 0});
  EXPECT_EQ(phi1.policy_at(h).probability(2), 1.0);
}

TEST(GrimTrigger, PunishmentIsAbsorbing) {
  const Game g = example1_game();
  for (int which : {1, 2}) {
    const GrimTriggerSpec spec = example1_trigger(which);
    GrimTrigger phi(spec, 3, 0);
    for_all_histories(g, 6, [&](const History& h) {
      bool deviated = false;
      for (const auto& s : h) deviated = deviated || s.alice != spec.expected_alice_action;
      const Action expected = deviated ? spec.punish_action : spec.cooperate_action;
      ASSERT_EQ(phi.policy_at(h).probability(expected), 1.0);
    });
  }
}

TEST(FictitiousPlay, RespondsToEmpiricalMass) {
  const Game g = example1_game();
  FictitiousPlay fp(g, 0);
  History h = repeated(History{}, {0, 0}, 32);
  h = repeated(h, {1, 0}, 10);
  // b1 scores 64/42, b2 20/42, b3 1.
  EXPECT_EQ(fp.policy_at(h).probability(0), 1.0);
  h = repeated(h, {1, 0}, 23);
  EXPECT_EQ(fp.policy_at(h).probability(1), 1.0);
}

TEST(FictitiousPlay, TiesGoToTheLowestAction) {
  const Game g = coordination_game(3);
  FictitiousPlay fp(g, 0);
  EXPECT_EQ(fp.policy_at(History{}).probability(0), 1.0);
  EXPECT_EQ(fp.policy_at(History({{2, 0}, {1, 0}})).probability(1), 1.0);
}

TEST(Switching, UniformThenMirrorsTarget) {
  SwitchingPartner phi({3, 1, 3, std::nullopt}, 0);
  EXPECT_NEAR(phi.policy_at(History({{1, 0}})).probability(1), 1.0 / 3.0, 1e-15);
  const History late({{0, 0}, {0, 0}, {1, 0}});
  EXPECT_EQ(phi.policy_at(late).probability(1), 1.0);
  const History other({{0, 0}, {0, 0}, {2, 0}});
  EXPECT_NEAR(phi.policy_at(other).probability(1), 1.0 / 3.0, 1e-15);
}

TEST(Switching, FallbackReplacesUniform) {
  SwitchingPartner phi({2, 0, 3, Action{2}}, 0);
  EXPECT_EQ(phi.policy_at(History{}).probability(2), 1.0);
  EXPECT_EQ(phi.policy_at(History({{0, 0}, {0, 0}})).probability(0), 1.0);
}

TEST(Mirror, PlaysAlicesLastAction) {
  auto m = mirror_partner(3, 3, 1, 0);
  EXPECT_EQ(m->policy_at(History{}).probability(1), 1.0);
  EXPECT_EQ(m->policy_at(History({{2, 0}})).probability(2), 1.0);
}

TEST(Mixture, CoinDependsOnSeedOnly) {
  auto make = [](std::uint64_t s) {
    std::vector<std::unique_ptr<Strategy>> parts;
    parts.push_back(grim_trigger(example1_trigger(1), 3, s));
    parts.push_back(grim_trigger(example1_trigger(2), 3, s));
    return mixture_partner(std::move(parts), {0.5, 0.5}, s);
  };
  int first = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    auto m = make(s);
    const Action before = m->draw();
    m->replay(History({{0, 0}}));
    m->reset();
    EXPECT_EQ(m->draw(), before);
    first += before == 0;
  }
  // Binomial(2000, 1/2): 3 standard deviations is about 67.
  EXPECT_NEAR(first, 1000, 67);
}

TEST(Partners, RejectBadArguments) {
  EXPECT_THROW(uniform_partner(0, 0), std::invalid_argument);
  EXPECT_THROW(example1_trigger(3), std::invalid_argument);
  EXPECT_THROW(switching_partner({0, 5, 3, std::nullopt}, 0), std::invalid_argument);
}

TEST(Partners, ReplayContract) {
  const Game g = coordination_game(3);
  const std::vector<StrategyFactory> zoo{
      [](std::uint64_t s) { return uniform_partner(3, s); },
      [](std::uint64_t s) { return grim_trigger({0, 0, 1}, 3, s); },
      [](std::uint64_t s) { return switching_partner({10, 2, 3, std::nullopt}, s); },
      [g](std::uint64_t s) { return fictitious_play_partner(g, s); },
      [](std::uint64_t s) { return mirror_partner(3, 3, 0, s); },
  };
  for (const auto& f : zoo) test_support::expect_replay_consistent(f, g, false, 60, 17);
}
