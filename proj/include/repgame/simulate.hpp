#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

struct StageRecord {
  Action alice = 0;
  Action bob = 0;
  double payoff = 0.0;

  bool operator==(const StageRecord&) const = default;
};

/// One realized path of play, truncated at a finite horizon.
struct Trajectory {
  Game game;
  std::vector<StageRecord> stages;
  std::uint64_t seed = 0;

  std::size_t length() const { return stages.size(); }
  History history() const;
  double average_payoff() const;

  bool operator==(const Trajectory&) const = default;
};

/// Plays the stage after `h`: both strategies are replayed onto the same
/// pre-stage history and sample independently from their own streams.
StageRecord step(const Game& game, Strategy& pi, Strategy& phi, const History& h);

/// Plays `horizon` stages from the empty history. Both strategies are reset
/// first and left at the final history, so callers can inspect their state.
Trajectory rollout(const Game& game, Strategy& pi, Strategy& phi, std::size_t horizon,
                   std::uint64_t seed = 0);

/// Builds both strategies from derived (learner, partner) seeds of trial 0.
Trajectory rollout(const Game& game, const StrategyFactory& pi_factory,
                   const StrategyFactory& phi_factory, std::size_t horizon, std::uint64_t seed);

/// Continues play from the strategies' current state for `stages` more stages,
/// invoking `visit(stage_index, record)` with the zero-based absolute index.
template <typename Visitor>
void play(const Game& game, Strategy& pi, Strategy& phi, std::size_t stages, Visitor&& visit);

void check_action(const Strategy& s, Action a, int limit, std::size_t stage);

/// JSON-lines, one object {"n","a","b","u"} per stage; n is 1-based.
void write_jsonl(std::ostream& out, const Trajectory& t);
Trajectory read_jsonl(std::istream& in, const Game& game, std::uint64_t seed = 0);

template <typename Visitor>
void play(const Game& game, Strategy& pi, Strategy& phi, std::size_t stages, Visitor&& visit) {
  for (std::size_t k = 0; k < stages; ++k) {
    const std::size_t n = pi.observed();
    const Action a = pi.draw();
    const Action b = phi.draw();
    check_action(pi, a, game.rows(), n);
    check_action(phi, b, game.cols(), n);
    const StageRecord record{a, b, game.payoff(a, b)};
    pi.observe({a, b});
    phi.observe({a, b});
    visit(n, record);
  }
}

}  // namespace repgame
