#include "repgame/adversary.hpp"

#include <stdexcept>

#include "repgame/exploiter.hpp"
#include "repgame/partners.hpp"

namespace repgame {

SwitchingPlan construct_switching_adversary(const Game& game, const StrategyFactory& learner_factory,
                                            double delta, const CommitParams& commit) {
  const int n = game.cols();
  const StrategyFactory uniform = [n](std::uint64_t seed) { return uniform_partner(n, seed); };
  SwitchingPlan plan;
  plan.commit = estimate_commit_time(game, learner_factory, uniform, delta, commit.trials,
                                     commit.horizon, commit.seed, commit.window, commit.parallelism);
  const auto& p = plan.commit.p;
  for (std::size_t e = 1; e < p.size() && static_cast<int>(e) < n; ++e) {
    if (p[e] < p[static_cast<std::size_t>(plan.target)]) plan.target = static_cast<Action>(e);
  }
  const SwitchingSpec spec{plan.commit.tau, plan.target, n, std::nullopt};
  plan.factory = [spec](std::uint64_t seed) { return switching_partner(spec, seed); };
  return plan;
}

AdversaryPlan theorem1_adversary(const Game& game, const StrategyFactory& learner_factory,
                                 double delta, const CommitParams& commit,
                                 const OracleParams& oracle) {
  const int n = game.rows();
  if (n < 3 || !(game == coordination_game(n))) {
    throw std::invalid_argument("theorem1_adversary: needs an N x N coordination game with N >= 3");
  }
  const double margin = static_cast<double>(n - 2) / n;
  if (!(delta > 0.0 && delta < margin)) {
    throw std::invalid_argument("theorem1_adversary: delta outside (0, (N-2)/N)");
  }
  SwitchingPlan switching = construct_switching_adversary(game, learner_factory, delta, commit);
  AdversaryPlan plan;
  plan.commit = switching.commit;
  const double gamma = plan.commit.gamma_hat;
  plan.passive_term = margin - gamma - delta;
  plan.active_term = gamma * (margin - delta);
  if (!plan.commit.degenerate && plan.passive_term >= plan.active_term) {
    plan.branch = AdversaryBranch::switching;
    plan.target = switching.target;
    plan.factory = std::move(switching.factory);
  } else {
    plan.branch = AdversaryBranch::exploiter;
    plan.factory = [learner_factory, game, delta, oracle](std::uint64_t seed) {
      return predictive_exploiter(learner_factory, game, delta, oracle, seed);
    };
  }
  return plan;
}

std::string to_string(AdversaryBranch branch) {
  return branch == AdversaryBranch::switching ? "switching" : "exploiter";
}

nlohmann::json to_json(const AdversaryPlan& plan) {
  return {{"branch", to_string(plan.branch)},
          {"passive_term", plan.passive_term},
          {"active_term", plan.active_term},
          {"target", plan.target},
          {"commit", to_json(plan.commit)}};
}

}  // namespace repgame
