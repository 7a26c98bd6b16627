#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "repgame/distribution.hpp"
#include "repgame/history.hpp"

namespace repgame {

/// Behavioral strategy for one side of the repeated game.
///
/// A strategy is a function of the history it has observed plus its own seed.
/// Implementations keep incremental state and advance one stage per
/// `observe`; `policy_at` rebuilds that state for an arbitrary history, which
/// is how callers condition on histories the strategy would never produce.
/// Samples come from a counter-based stream keyed by (seed, stage index), so
/// two instances with equal seeds replayed on equal histories draw the same
/// actions regardless of how their partner is queried.
class Strategy {
 public:
  explicit Strategy(std::uint64_t seed) : seed_(seed) {}
  virtual ~Strategy() = default;

  Strategy(const Strategy&) = default;
  Strategy& operator=(const Strategy&) = default;

  virtual int num_actions() const = 0;
  virtual std::string label() const = 0;
  virtual std::unique_ptr<Strategy> clone() const = 0;

  /// Action distribution for the next stage.
  virtual ActionDistribution policy() const = 0;
  virtual double probability(Action a) const { return policy().probability(a); }
  virtual Action sample(double u) const { return policy().sample(u); }
  /// True when every future stage repeats the current action whatever the
  /// partner plays.
  virtual bool settled() const { return false; }

  void observe(const JointAction& stage) {
    on_observe(stage);
    ++observed_;
  }

  /// Back to the empty history. The seed, and anything derived from it, is kept.
  void reset() {
    observed_ = 0;
    on_reset();
  }

  /// Number of stages observed since the last reset.
  std::size_t observed() const { return observed_; }
  std::uint64_t seed() const { return seed_; }

  /// Draw for the next stage from this strategy's own stream.
  Action draw() const;

  /// Resets, replays `h`, and returns the resulting policy.
  ActionDistribution policy_at(const History& h);
  void replay(const History& h);

 protected:
  virtual void on_observe(const JointAction& stage) = 0;
  virtual void on_reset() = 0;

 private:
  std::uint64_t seed_;
  std::size_t observed_ = 0;
};

/// Builds a fresh strategy from a seed. Factories stand in for "the
/// algorithm" wherever a construction needs to instantiate it repeatedly.
using StrategyFactory = std::function<std::unique_ptr<Strategy>(std::uint64_t seed)>;

}  // namespace repgame

namespace repgame {

/// Picks one component with a single seeded coin before the first stage and
/// delegates every call to it for the rest of the interaction. The coin is a
/// function of the seed alone, so `reset` keeps the same component.
class MixtureStrategy final : public Strategy {
 public:
  MixtureStrategy(std::vector<std::unique_ptr<Strategy>> components, std::vector<double> weights,
                  std::uint64_t seed, std::string label = "");
  MixtureStrategy(const MixtureStrategy& other);

  int num_actions() const override { return chosen().num_actions(); }
  std::string label() const override { return label_; }
  std::unique_ptr<Strategy> clone() const override;
  ActionDistribution policy() const override { return chosen().policy(); }
  double probability(Action a) const override { return chosen().probability(a); }
  Action sample(double u) const override { return chosen().sample(u); }
  bool settled() const override { return chosen().settled(); }

  std::size_t chosen_index() const { return chosen_; }
  const Strategy& chosen() const { return *components_[chosen_]; }

 protected:
  void on_observe(const JointAction& stage) override { components_[chosen_]->observe(stage); }
  void on_reset() override { components_[chosen_]->reset(); }

 private:
  std::vector<std::unique_ptr<Strategy>> components_;
  std::vector<double> weights_;
  std::size_t chosen_ = 0;
  std::string label_;
};

}  // namespace repgame
