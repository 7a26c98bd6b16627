#include "repgame/deviation_oracle.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "repgame/rng.hpp"

namespace repgame {

DeviationForecast forecast_deviation(const std::vector<WeightedLearner>& starts, Action action,
                                     int n_bob, double delta_i, std::size_t trials,
                                     std::size_t sigma_cap, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("deviation oracle: trials must be positive");
  if (!(delta_i > 0.0 && delta_i < 1.0)) throw std::invalid_argument("deviation oracle: delta_i outside (0,1)");
  if (starts.empty() || n_bob < 1) throw std::invalid_argument("deviation oracle: nothing to forecast");

  struct Replica {
    std::unique_ptr<Strategy> learner;
    double weight;
    double product;
    std::uint64_t seed;
  };
  std::vector<Replica> live;
  live.reserve(trials);
  double total_weight = 0.0;
  for (std::size_t r = 0; r < trials; ++r) {
    const WeightedLearner& start = starts[r % starts.size()];
    if (!(start.weight > 0.0)) continue;
    live.push_back({start.learner->clone(), start.weight, 1.0,
                    derive_trial_seed(seed, r, Stream::oracle)});
    total_weight += start.weight;
  }
  if (live.empty()) throw std::invalid_argument("deviation oracle: all weights are zero");

  DeviationForecast forecast{sigma_cap, true, 1.0};
  for (std::size_t sigma = 1; sigma <= sigma_cap; ++sigma) {
    double mass = 0.0;
    for (Replica& r : live) {
      r.product *= r.learner->probability(action);
      mass += r.weight * r.product;
    }
    std::erase_if(live, [](const Replica& r) { return r.product <= 0.0; });
    forecast.stay_probability = mass / total_weight;
    if (forecast.stay_probability <= delta_i) return {sigma, false, forecast.stay_probability};
    if (std::all_of(live.begin(), live.end(), [](const Replica& r) { return r.learner->settled(); })) {
      return forecast;
    }
    for (Replica& r : live) {
      const double u = unit_uniform(r.seed, sigma);
      const Action b = std::min(static_cast<Action>(u * n_bob), n_bob - 1);
      r.learner->observe({action, b});
    }
  }
  return forecast;
}

DeviationForecast predict_deviation_horizon(const StrategyFactory& learner_factory,
                                            const History& h, const Game& game, double delta_i,
                                            std::size_t trials, std::size_t sigma_cap,
                                            std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("deviation oracle: trials must be positive");
  const auto last = h.last_alice_action();
  if (!last) throw std::invalid_argument("deviation oracle: history has no Alice action");
  h.validate(game);
  auto learner = learner_factory(derive_trial_seed(seed, 0, Stream::learner));
  learner->replay(h);
  return forecast_deviation({{learner.get(), 1.0}}, *last, game.cols(), delta_i, trials, sigma_cap,
                            seed);
}

}  // namespace repgame
