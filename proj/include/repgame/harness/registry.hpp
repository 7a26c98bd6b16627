#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repgame/adversary.hpp"
#include "repgame/deviation_oracle.hpp"
#include "repgame/estimation.hpp"
#include "repgame/game.hpp"
#include "repgame/harness/config.hpp"
#include "repgame/learners.hpp"
#include "repgame/machine.hpp"

namespace repgame::harness {

/// Names accepted for `kind` in each section.
const std::vector<std::string>& game_kinds();
const std::vector<std::string>& learner_kinds();
const std::vector<std::string>& partner_kinds();
const std::vector<std::string>& metric_kinds();

Game make_game(const Config& c, const std::string& section = "game");
ExpertSet make_experts(const Config& c, const Game& game);
EstimationParams make_estimation(const Config& c);
CommitParams make_commit(const Config& c, const EstimationParams& est);
OracleParams make_oracle(const Config& c, const std::string& section, const EstimationParams& est);

StrategyFactory make_learner(const Config& c, const std::string& section, const Game& game,
                             const ExpertSet& experts);

/// A partner whose construction may need a Monte Carlo step (the adversaries).
/// `resolve` only validates; `build` runs that step.
struct PartnerRecipe {
  std::string kind;
  std::function<StrategyFactory(nlohmann::json& diagnostics)> build;
  /// Mixture partners only: the component types and their weights.
  std::vector<StrategyFactory> types;
  std::vector<double> weights;
};

PartnerRecipe make_partner(const Config& c, const std::string& section, const Game& game,
                           const ExpertSet& experts, const StrategyFactory& learner,
                           const EstimationParams& est);

/// Machine spec strings: fixed:A, grim:W (trigger W of example1_game), grim:E:C:P,
/// mirror[:INIT], switching:TAU:TARGET:FALLBACK, or json:PATH.
Fsm make_machine(const std::string& spec, const Game& game, Role role);

}  // namespace repgame::harness
