#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

struct OracleParams {
  /// Monte Carlo continuations per forecast.
  std::size_t trials = 32;
  /// Shadow copies of the learner kept by the exploiter (distinct seeds).
  std::size_t replicas = 8;
  std::size_t sigma_cap = 1'000'000;
  /// Absolute stage count after which forecasts stop; a forecast from stage
  /// s is capped at stage_limit - s.
  std::size_t stage_limit = std::numeric_limits<std::size_t>::max();
  std::uint64_t seed = 0;
};

struct DeviationForecast {
  std::size_t sigma = 0;
  bool capped = false;
  /// Estimated probability that the learner keeps its action for sigma more stages.
  double stay_probability = 1.0;
};

/// A learner already conditioned on the history, with a posterior weight.
struct WeightedLearner {
  const Strategy* learner = nullptr;
  double weight = 1.0;
};

/// Smallest sigma <= sigma_cap with estimated
///   P(learner plays `action` at each of the next sigma stages) <= delta_i
/// when Bob plays uniformly over `n_bob` actions.
///
/// Each continuation forces the learner to keep `action` and accumulates the
/// product of the probabilities it assigns to doing so, which estimates the
/// staying probability without sampling Alice's side.
DeviationForecast forecast_deviation(const std::vector<WeightedLearner>& starts, Action action,
                                     int n_bob, double delta_i, std::size_t trials,
                                     std::size_t sigma_cap, std::uint64_t seed);

/// Rebuilds the learner from `learner_factory`, replays it onto `h` and
/// forecasts how long Alice's last action in `h` survives.
DeviationForecast predict_deviation_horizon(const StrategyFactory& learner_factory,
                                            const History& h, const Game& game, double delta_i,
                                            std::size_t trials, std::size_t sigma_cap,
                                            std::uint64_t seed = 0);

}  // namespace repgame
