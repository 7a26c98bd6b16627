#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "repgame/deviation_oracle.hpp"
#include "repgame/estimation.hpp"
#include "repgame/game.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

/// Budget for the commit-time estimate against uniform play.
struct CommitParams {
  std::size_t trials = 2000;
  std::size_t horizon = 10000;
  /// 0 selects horizon / 2.
  std::size_t window = 0;
  std::uint64_t seed = 0;
  unsigned parallelism = 1;
};

struct SwitchingPlan {
  CommitTime commit;
  Action target = 0;
  StrategyFactory factory;
};

/// Estimates tau and the convergence probabilities p_e against the uniform
/// partner, then targets the least likely action.
SwitchingPlan construct_switching_adversary(const Game& game, const StrategyFactory& learner_factory,
                                            double delta, const CommitParams& commit);

enum class AdversaryBranch { switching, exploiter };

struct AdversaryPlan {
  AdversaryBranch branch = AdversaryBranch::switching;
  CommitTime commit;
  double passive_term = 0.0;
  double active_term = 0.0;
  Action target = 0;
  StrategyFactory factory;
};

/// Switching strategy when (N-2)/N - gamma - delta >= gamma [(N-2)/N - delta],
/// predictive exploiter otherwise. Requires an N x N coordination game with
/// N >= 3 and 0 < delta < (N-2)/N.
AdversaryPlan theorem1_adversary(const Game& game, const StrategyFactory& learner_factory,
                                 double delta, const CommitParams& commit,
                                 const OracleParams& oracle);

std::string to_string(AdversaryBranch branch);
nlohmann::json to_json(const AdversaryPlan& plan);

}  // namespace repgame
