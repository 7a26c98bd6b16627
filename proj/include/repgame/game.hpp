#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace repgame {

using Action = int;

/// Dense payoff matrix templated on scalar; rows are Alice actions.
template <typename Scalar>
using PayoffMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct PayoffRange {
  double lo = 0.0;
  double hi = 1.0;

  bool operator==(const PayoffRange&) const = default;
};

/// Stage game with a shared (fully cooperative) payoff G(a, b).
///
/// The declared range is part of the game: Example-style games with payoffs in
/// [0, 2] are legal, but operations that reason about [0, 1] payoffs refuse them
/// unless the caller asks for the normalized variant.
class Game {
 public:
  Game(PayoffMatrix<double> payoff, PayoffRange range);

  int rows() const { return static_cast<int>(payoff_.rows()); }
  int cols() const { return static_cast<int>(payoff_.cols()); }
  double payoff(Action a, Action b) const { return payoff_(a, b); }
  const PayoffMatrix<double>& matrix() const { return payoff_; }
  PayoffRange range() const { return range_; }
  bool has_unit_range() const { return range_.lo == 0.0 && range_.hi == 1.0; }

  /// Affine rescaling onto [0, 1].
  Game normalized() const;
  /// Adds kappa to every payoff and to both range bounds.
  Game translated(double kappa) const;

  bool operator==(const Game& other) const {
    return range_ == other.range_ && payoff_ == other.payoff_;
  }

 private:
  PayoffMatrix<double> payoff_;
  PayoffRange range_;
};

/// N x N identity-payoff coordination game.
Game coordination_game(int n);

/// 2 x 3 game with rows (2, 0, 1) and (0, 2, 1); range [0, 2], or the same
/// matrix halved with range [0, 1] when `normalized`.
Game example1_game(bool normalized = false);

/// Throws std::invalid_argument unless the range is [0, 1] or `normalize` is
/// set, in which case the normalized game is returned.
Game require_unit_range(const Game& game, bool normalize);

nlohmann::json to_json(const Game& game);
Game game_from_json(const nlohmann::json& j);

}  // namespace repgame
