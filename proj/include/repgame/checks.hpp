#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repgame/estimation.hpp"
#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/learners.hpp"

namespace repgame {

/// Histories Bob can actually reach under phi: Alice's prefix is drawn as
/// iid uniform, as a constant run, or as a random head followed by a run
/// (cycling through the three shapes), and Bob answers per phi.
std::vector<History> sample_histories(const Game& game, const StrategyFactory& phi_factory,
                                      std::size_t count, std::size_t max_length,
                                      std::uint64_t seed);

struct ExpertSpread {
  std::string label;
  double mu_hat = 0.0;
  double min = 0.0;
  double max = 0.0;
  double ci_min = 0.0;
  double ci_max = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;

  double spread() const { return max - min; }
};

struct OpenEndedReport {
  bool pass = true;
  double tolerance = 0.0;
  std::vector<ExpertSpread> experts;
  /// values[e][h]: tail-window estimate of V(e, phi | h).
  std::vector<std::vector<double>> values;
  std::optional<std::size_t> witness_expert;
  std::optional<History> witness;
};

/// Passes iff, for every expert, max_h V(e, phi|h) - min_h V(e, phi|h) is within
/// tolerance plus the CIs of the two extremes.
OpenEndedReport check_open_ended(const Game& game, const StrategyFactory& phi_factory,
                                 const ExpertSet& experts, const std::vector<History>& histories,
                                 double tolerance, const EstimationParams& params);

struct FlexibilityViolation {
  std::size_t expert = 0;
  std::size_t history = 0;
  std::size_t s = 0;
  double deviation = 0.0;
  double bound = 0.0;
  double ci = 0.0;
};

struct FlexibilityReport {
  double c = 0.0;
  double r = 0.0;
  /// Set when r <= 1/4.
  bool low_rate_warning = false;
  std::vector<double> mu_hat;
  std::vector<std::size_t> s_grid;
  /// deviations[e][h][k]: E|average payoff over s_grid[k] stages after h - mu_hat[e]|.
  std::vector<std::vector<std::vector<double>>> deviations;
  std::vector<FlexibilityViolation> violations;

  bool pass() const { return violations.empty(); }
};

/// Estimates mu_e as the tail value from the empty history, then flags every
/// (e, h, s) whose mean absolute deviation exceeds c s^-r plus the CIs.
FlexibilityReport check_flexibility(const Game& game, const StrategyFactory& phi_factory,
                                    const ExpertSet& experts, double c, double r,
                                    const std::vector<History>& histories,
                                    const std::vector<std::size_t>& s_grid,
                                    const EstimationParams& params);

/// argmax_b G(e, b), within a relative tolerance.
std::vector<Action> best_response_set(const Game& game, Action e);

/// min over b outside B(e) of max_b G(e, b) - G(e, b); +inf when B(e) is everything.
double minimum_regret(const Game& game, Action e);

struct FictitiousPlayCheck {
  std::size_t bound = 0;
  /// First stage (1-based, relative to |h|) from which Bob stays in B(e).
  std::size_t settled_at = 0;
  bool ok = true;
};

/// Alice follows e after h; fictitious play must answer inside B(e) from
/// relative stage bound + 1 onward, with bound = ceil(|h| / eps(e)) + 1.
/// Play continues for `extra` stages past the bound.
FictitiousPlayCheck check_fictitious_play_convergence(const Game& game, const History& h, Action e,
                                                      std::size_t extra = 50);

nlohmann::json to_json(const OpenEndedReport& r);
nlohmann::json to_json(const FlexibilityReport& r);

}  // namespace repgame
