#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "repgame/game.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

/// Bob plays uniformly at random regardless of history.
class UniformPartner final : public Strategy {
 public:
  UniformPartner(int n, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<UniformPartner>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::uniform(n_); }
  double probability(Action) const override { return 1.0 / n_; }
  Action sample(double u) const override;

 protected:
  void on_observe(const JointAction&) override {}
  void on_reset() override {}

 private:
  int n_;
};

/// History-independent distribution.
class StationaryPartner final : public Strategy {
 public:
  StationaryPartner(ActionDistribution dist, std::uint64_t seed);

  int num_actions() const override { return dist_.size(); }
  std::string label() const override { return "stationary"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<StationaryPartner>(*this); }
  ActionDistribution policy() const override { return dist_; }
  double probability(Action a) const override { return dist_.probability(a); }
  Action sample(double u) const override { return dist_.sample(u); }

 protected:
  void on_observe(const JointAction&) override {}
  void on_reset() override {}

 private:
  ActionDistribution dist_;
};

struct GrimTriggerSpec {
  Action expected_alice_action = 0;
  Action cooperate_action = 0;
  Action punish_action = 0;
};

/// Cooperates while Alice keeps playing the expected action; punishes forever
/// after the first deviation.
class GrimTrigger final : public Strategy {
 public:
  GrimTrigger(GrimTriggerSpec spec, int n_bob, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<GrimTrigger>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(n_, current()); }
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }

  bool triggered() const { return triggered_; }
  const GrimTriggerSpec& spec() const { return spec_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override { triggered_ = false; }

 private:
  Action current() const { return triggered_ ? spec_.punish_action : spec_.cooperate_action; }

  GrimTriggerSpec spec_;
  int n_;
  bool triggered_ = false;
};

/// Triggers of example1_game: 1 plays b1 while Alice plays a1, else b3; 2 plays b2 while Alice plays a2, else b3.
GrimTriggerSpec example1_trigger(int which);

struct SwitchingSpec {
  static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

  /// Stages of unconditional uniform play; kNever gives the uniform strategy.
  std::size_t tau = 0;
  Action target = 0;
  int n = 2;
  /// Replaces the uniform fallback with a fixed action (derandomized variant,
  /// used for exact finite-state analysis).
  std::optional<Action> fallback;
};

/// Plays `target` when |h| >= tau and Alice's last action was `target`;
/// otherwise uniform (or the fixed fallback).
class SwitchingPartner final : public Strategy {
 public:
  SwitchingPartner(SwitchingSpec spec, std::uint64_t seed);

  int num_actions() const override { return spec_.n; }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<SwitchingPartner>(*this); }
  ActionDistribution policy() const override;
  double probability(Action a) const override;
  Action sample(double u) const override;

  const SwitchingSpec& spec() const { return spec_; }

 protected:
  void on_observe(const JointAction& stage) override { last_alice_ = stage.alice; }
  void on_reset() override { last_alice_.reset(); }

 private:
  bool mirroring() const;

  SwitchingSpec spec_;
  std::optional<Action> last_alice_;
};

/// Best response to the empirical distribution of Alice's past actions under
/// the shared payoff G(a, b). Ties go to the lowest Bob action.
class FictitiousPlay final : public Strategy {
 public:
  FictitiousPlay(const Game& game, std::uint64_t seed);

  int num_actions() const override { return static_cast<int>(payoff_.cols()); }
  std::string label() const override { return "fictitious_play"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FictitiousPlay>(*this); }
  ActionDistribution policy() const override {
    return ActionDistribution::point_mass(num_actions(), response_);
  }
  double probability(Action a) const override { return a == response_ ? 1.0 : 0.0; }
  Action sample(double) const override { return response_; }

  const Eigen::VectorXd& counts() const { return counts_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override;

 private:
  PayoffMatrix<double> payoff_;
  Eigen::VectorXd counts_;
  Action response_ = 0;
};

/// Lowest-index argmax of the expected payoff sum_a weights(a) G(a, b).
Action best_response(const PayoffMatrix<double>& payoff, const Eigen::VectorXd& weights);

/// Plays table[a(h)]; `initial` on the empty history. The identity table is
/// the mirror strategy.
class ReactivePartner final : public Strategy {
 public:
  ReactivePartner(std::vector<Action> table, Action initial, int n_bob, std::uint64_t seed);

  int num_actions() const override { return n_; }
  std::string label() const override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ReactivePartner>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(n_, current()); }
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }

  const std::vector<Action>& table() const { return table_; }
  Action initial() const { return initial_; }

 protected:
  void on_observe(const JointAction& stage) override { last_alice_ = stage.alice; }
  void on_reset() override { last_alice_.reset(); }

 private:
  Action current() const { return last_alice_ ? table_.at(static_cast<std::size_t>(*last_alice_)) : initial_; }

  std::vector<Action> table_;
  Action initial_;
  int n_;
  std::optional<Action> last_alice_;
};

std::unique_ptr<Strategy> uniform_partner(int n, std::uint64_t seed);
std::unique_ptr<Strategy> stationary_partner(ActionDistribution dist, std::uint64_t seed);
std::unique_ptr<Strategy> grim_trigger(GrimTriggerSpec spec, int n_bob, std::uint64_t seed);
std::unique_ptr<Strategy> switching_partner(SwitchingSpec spec, std::uint64_t seed);
std::unique_ptr<Strategy> fictitious_play_partner(const Game& game, std::uint64_t seed);
std::unique_ptr<Strategy> mirror_partner(int n_alice, int n_bob, Action initial, std::uint64_t seed);

/// Bob commits to one of `components` with one seeded coin.
std::unique_ptr<Strategy> mixture_partner(std::vector<std::unique_ptr<Strategy>> components,
                                          std::vector<double> weights, std::uint64_t seed);

}  // namespace repgame
