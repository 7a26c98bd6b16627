#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "repgame/game.hpp"
#include "repgame/history.hpp"
#include "repgame/learners.hpp"
#include "repgame/simulate.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

enum class ValueKind { mean, tail };

struct EstimationParams {
  std::size_t trials = 2000;
  std::size_t horizon = 10000;
  /// 0 selects horizon / 2.
  std::size_t tail_window = 0;
  std::uint64_t seed = 0;
  /// Worker threads; 0 selects hardware concurrency.
  unsigned parallelism = 1;
  /// Which statistic the regret functions compare.
  ValueKind value_kind = ValueKind::mean;

  std::size_t window() const { return tail_window ? tail_window : std::max<std::size_t>(horizon / 2, 1); }
};

struct Checkpoint {
  std::size_t stage = 0;
  double tail_mean = 0.0;
};

/// Monte Carlo estimate of the conditional expected average payoff.
struct ValueEstimate {
  double mean = 0.0;
  double ci_half_width = 0.0;
  double tail_mean = 0.0;
  double tail_ci = 0.0;
  double liminf_proxy = 0.0;
  std::size_t horizon = 0;
  std::size_t tail_window = 0;
  std::size_t trials = 0;
  std::vector<Checkpoint> checkpoints;
  /// Per-trial statistic selected by the estimation parameters, in trial order.
  std::vector<double> samples;

  double value(ValueKind kind) const { return kind == ValueKind::mean ? mean : tail_mean; }
  double ci(ValueKind kind) const { return kind == ValueKind::mean ? ci_half_width : tail_ci; }
};

/// 1.96 * sample standard deviation / sqrt(n); zero for n < 2.
double ci95(const std::vector<double>& xs);
double sample_mean(const std::vector<double>& xs);

/// Plays `burn_in` stages after `h` without scoring them, then averages the
/// payoff over the next `params.horizon` stages. Trial t builds its strategies
/// from derive_trial_seed(params.seed, t, learner | partner), so arms that
/// share a seed see common random numbers.
ValueEstimate estimate_value(const Game& game, const StrategyFactory& pi_factory,
                             const StrategyFactory& phi_factory, const History& h,
                             const EstimationParams& params, std::size_t burn_in = 0);

/// Trials rolled out from the empty history (seeded as in estimate_value).
std::vector<Trajectory> sample_trajectories(const Game& game, const StrategyFactory& pi_factory,
                                            const StrategyFactory& phi_factory,
                                            std::size_t trials, std::size_t horizon,
                                            std::uint64_t seed, unsigned parallelism = 1);

struct RegretEstimate {
  double value = 0.0;
  double ci = 0.0;
  std::size_t best_expert = 0;
  ValueEstimate learner;
  std::vector<ValueEstimate> experts;
};

/// max_e V(e, phi) - V(learner, phi), each arm against a fresh partner.
/// The CI is the paired CI of the per-trial differences for the best expert.
RegretEstimate adaptive_regret(const Game& game, const StrategyFactory& learner_factory,
                               const StrategyFactory& phi_factory, const ExpertSet& experts,
                               const EstimationParams& params);

struct TypedRegret {
  double value = 0.0;
  double ci = 0.0;
  std::vector<double> weights;
  std::vector<RegretEstimate> per_type;
};

/// Adaptive regret when Bob is drawn once from a finite set of types:
/// sum_i w_i [max_e V(e, phi_i) - V(learner, phi_i)]. Each type is scored
/// with the same seeds; the CI combines the per-type CIs as independent.
TypedRegret type_conditional_regret(const Game& game, const StrategyFactory& learner_factory,
                                    const std::vector<StrategyFactory>& types,
                                    const std::vector<double>& weights, const ExpertSet& experts,
                                    const EstimationParams& params);

struct ExternalRegret {
  double value = 0.0;
  double ci = 0.0;
  Action best_action = 0;
};

/// Counterfactual on the logged Bob actions, maximized over fixed actions.
ExternalRegret external_regret(const std::vector<Trajectory>& batch, const Game& game,
                               const std::vector<Action>& experts);

/// Same quantity with trajectories generated on the fly (seeded as in
/// estimate_value), so large batches need not be stored.
ExternalRegret external_regret(const Game& game, const StrategyFactory& pi_factory,
                               const StrategyFactory& phi_factory, const std::vector<Action>& experts,
                               const EstimationParams& params);

/// Plays a scripted prefix, then a fixed action forever.
class ScriptedThenFixed final : public Strategy {
 public:
  ScriptedThenFixed(std::vector<Action> script, Action then, int n, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override { return "scripted"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ScriptedThenFixed>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(n_, current()); }
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }
  bool settled() const override { return observed() >= script_.size(); }

 protected:
  void on_observe(const JointAction&) override {}
  void on_reset() override {}

 private:
  Action current() const { return observed() < script_.size() ? script_[observed()] : then_; }

  std::vector<Action> script_;
  Action then_;
  int n_;
};

struct OpenEndedRegret {
  double value = 0.0;
  double ci = 0.0;
  bool partial = false;
  std::size_t prefixes_evaluated = 0;
  /// Per expert: min over prefixes of V(e, phi | prefix), and the minimizing prefix.
  std::vector<double> guaranteed;
  std::vector<double> guaranteed_ci;
  std::vector<std::vector<Action>> witness;
  ValueEstimate learner;
};

/// max_e min_{|prefix| <= depth} V(e, phi | prefix) - V(learner, phi). Alice's
/// prefixes are enumerated exhaustively, Bob answers them per phi. Stops with
/// `partial` set once `prefix_budget` prefixes have been scored per expert.
OpenEndedRegret open_ended_regret(const Game& game, const StrategyFactory& learner_factory,
                                  const StrategyFactory& phi_factory,
                                  const std::vector<Action>& experts, std::size_t depth,
                                  const EstimationParams& params,
                                  std::size_t prefix_budget = 100000);

struct CommitTime {
  std::size_t tau = 0;
  double gamma_hat = 0.0;
  bool degenerate = false;
  std::size_t window = 0;
  /// Fraction of trials converged by tau that end on each action.
  std::vector<double> p;
  std::size_t converged_trials = 0;
  std::vector<std::size_t> last_switch;
};

/// Zero-based index where the final constant run of Alice's actions starts.
std::size_t last_switch_index(const Trajectory& t);

/// Commit time in zero-based stage indices: with probability about
/// 1 - gamma_hat - delta Alice's action at every stage after tau equals her
/// action at tau. gamma_hat counts trials that switch inside the final
/// `window` stages (0 selects horizon / 2).
CommitTime estimate_commit_time(const Game& game, const StrategyFactory& learner_factory,
                                const StrategyFactory& phi_factory, double delta,
                                std::size_t trials, std::size_t horizon, std::uint64_t seed,
                                std::size_t window = 0, unsigned parallelism = 1);

nlohmann::json to_json(const ValueEstimate& v);
nlohmann::json to_json(const RegretEstimate& r);
nlohmann::json to_json(const CommitTime& c);

}  // namespace repgame
