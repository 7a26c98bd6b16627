#pragma once

#include <Eigen/Dense>

#include "repgame/game.hpp"

namespace repgame {

/// Probability vector over one player's actions.
class ActionDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates non-negativity and unit sum (within kSumTolerance).
  explicit ActionDistribution(Eigen::VectorXd probs);

  static ActionDistribution point_mass(int n, Action a);
  static ActionDistribution uniform(int n);

  int size() const { return static_cast<int>(probs_.size()); }
  double probability(Action a) const { return probs_(a); }
  const Eigen::VectorXd& probs() const { return probs_; }
  bool is_point_mass() const;

  /// Inverse-CDF sample for u in [0, 1). Never returns a zero-mass action.
  Action sample(double u) const;

 private:
  Eigen::VectorXd probs_;
};

}  // namespace repgame
