#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

/// Ordered list of expert strategies. Fixed-action experts also remember their
/// action, which is what the learners below need to attribute payoffs.
class ExpertSet {
 public:
  /// One fixed-action expert per action 0..n-1.
  static ExpertSet fixed_actions(int n);
  static ExpertSet fixed_actions(std::vector<Action> actions, int n);
  static ExpertSet custom(std::vector<StrategyFactory> factories, std::vector<std::string> labels);

  std::size_t size() const { return factories_.size(); }
  bool empty() const { return factories_.empty(); }
  const StrategyFactory& factory(std::size_t i) const { return factories_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool is_fixed_action() const { return !actions_.empty(); }
  /// Throws std::logic_error for custom sets.
  const std::vector<Action>& actions() const;
  int num_actions() const { return num_actions_; }

 private:
  std::vector<StrategyFactory> factories_;
  std::vector<std::string> labels_;
  std::vector<Action> actions_;
  int num_actions_ = 0;
};

class FixedAction final : public Strategy {
 public:
  FixedAction(Action e, int n, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override { return "fixed(" + std::to_string(e_) + ")"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FixedAction>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(n_, e_); }
  double probability(Action a) const override { return a == e_ ? 1.0 : 0.0; }
  Action sample(double) const override { return e_; }
  bool settled() const override { return true; }

  Action action() const { return e_; }

 protected:
  void on_observe(const JointAction&) override {}
  void on_reset() override {}

 private:
  Action e_;
  int n_;
};

enum class EvalScheme { blocks, interleaved };

/// Plays every expert for T/|E| stages, then commits to the best empirical
/// mean forever (ties to the lowest index).
///
/// State is a function of the observed history only. On histories that leave
/// the exploration schedule, each stage's payoff is credited to the expert
/// whose action was actually played, if any.
class ExploreThenCommit final : public Strategy {
 public:
  ExploreThenCommit(const Game& game, const ExpertSet& experts, std::size_t exploration,
                    EvalScheme scheme, std::uint64_t seed);

  int num_actions() const override { return static_cast<int>(payoff_.rows()); }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ExploreThenCommit>(*this); }
  ActionDistribution policy() const override;
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }
  bool settled() const override { return committed_ >= 0; }

  /// Number of exploration stages actually used: (T / |E|) * |E|.
  std::size_t exploration_length() const { return block_ * actions_.size(); }
  /// Index into the expert set; -1 while exploring.
  int committed_expert() const { return committed_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override;

 private:
  std::size_t scheduled(std::size_t n) const;
  Action current() const;

  PayoffMatrix<double> payoff_;
  std::vector<Action> actions_;
  std::size_t block_;
  EvalScheme scheme_;
  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  int committed_ = -1;
};

struct EpsilonSchedule {
  enum class Kind { constant, inverse_sqrt };
  Kind kind = Kind::constant;
  double epsilon = 0.3;

  /// Exploration probability for the k-th phase (k >= 1).
  double at(std::size_t k) const;
};

/// Phase length for an expert's m-th evaluation: max(1, ceil(scale * m^power)).
struct HorizonRule {
  double scale = 1.0;
  double power = 1.0;

  std::size_t at(std::size_t m) const;
};

struct PhaseRecord {
  std::size_t phase = 0;
  std::size_t expert = 0;
  std::size_t start = 0;
  std::size_t length = 0;
};

/// Epsilon-greedy strategic experts.
///
/// Play proceeds in phases. At a phase boundary the expert is drawn from
/// epsilon/|E| uniform mixed with 1-epsilon on the greedy expert (unevaluated
/// experts first, then the best running mean). The chosen expert is followed
/// for HorizonRule(m) stages, m being its evaluation count. Because the expert
/// is read off the realized action, the state is a deterministic function of
/// the history. An off-plan action in mid-phase opens a new phase for the
/// matching expert.
class StrategicExperts final : public Strategy {
 public:
  StrategicExperts(const Game& game, const ExpertSet& experts, EpsilonSchedule epsilon,
                   HorizonRule horizon, std::uint64_t seed, bool audit = false);

  int num_actions() const override { return static_cast<int>(payoff_.rows()); }
  std::string label() const override { return "strategic_experts"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<StrategicExperts>(*this); }
  ActionDistribution policy() const override;
  double probability(Action a) const override;
  Action sample(double u) const override;

  bool at_boundary() const { return remaining_ == 0; }
  std::size_t phases() const { return phase_; }
  std::size_t greedy() const;
  const std::vector<PhaseRecord>& ledger() const { return ledger_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override;

 private:
  void open_phase(std::size_t expert, std::size_t start);
  int expert_for(Action a, std::size_t preferred) const;

  PayoffMatrix<double> payoff_;
  std::vector<Action> actions_;
  EpsilonSchedule epsilon_;
  HorizonRule horizon_;
  bool audit_;

  std::vector<double> sums_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> evaluations_;
  std::size_t phase_ = 0;
  std::size_t current_ = 0;
  std::size_t remaining_ = 0;
  std::vector<PhaseRecord> ledger_;
};

/// Plays action (|h| / period) mod n.
class PeriodicSwitcher final : public Strategy {
 public:
  PeriodicSwitcher(std::size_t period, int n, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override { return "periodic(" + std::to_string(period_) + ")"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PeriodicSwitcher>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(n_, current()); }
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }

 protected:
  void on_observe(const JointAction&) override {}
  void on_reset() override {}

 private:
  Action current() const { return static_cast<Action>((observed() / period_) % static_cast<std::size_t>(n_)); }

  std::size_t period_;
  int n_;
};

/// Starts on action 0; afterwards repeats its last action with probability
/// 1-p and otherwise moves to a uniformly drawn different action.
class RandomSwitcher final : public Strategy {
 public:
  RandomSwitcher(double p, int n, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<RandomSwitcher>(*this); }
  ActionDistribution policy() const override;
  double probability(Action a) const override;
  Action sample(double u) const override;

 protected:
  void on_observe(const JointAction& stage) override { last_ = stage.alice; }
  void on_reset() override { last_ = -1; }

 private:
  double p_;
  int n_;
  Action last_ = -1;
};

std::unique_ptr<Strategy> fixed_expert(Action e, int n, std::uint64_t seed = 0);
std::unique_ptr<Strategy> explore_then_commit(const Game& game, const ExpertSet& experts,
                                              std::size_t exploration, std::uint64_t seed,
                                              EvalScheme scheme = EvalScheme::blocks);
std::unique_ptr<Strategy> strategic_experts(const Game& game, const ExpertSet& experts,
                                            EpsilonSchedule epsilon, HorizonRule horizon,
                                            std::uint64_t seed, bool audit = false);

/// Flips one seeded coin: `active` with probability p, otherwise `passive`.
std::unique_ptr<Strategy> mixed_learner(std::unique_ptr<Strategy> passive,
                                        std::unique_ptr<Strategy> active, double p,
                                        std::uint64_t seed);

/// Commits to a1 or a2 with a fair coin.
std::unique_ptr<Strategy> coin_commit(Action a1, Action a2, int n, std::uint64_t seed);

}  // namespace repgame
