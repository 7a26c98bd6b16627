#include "repgame/game.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "repgame/history.hpp"

namespace repgame {

Game::Game(PayoffMatrix<double> payoff, PayoffRange range)
    : payoff_(std::move(payoff)), range_(range) {
  if (payoff_.rows() < 1 || payoff_.cols() < 1) {
    throw std::invalid_argument("Game: both players need at least one action");
  }
  if (!(range_.lo <= range_.hi)) throw std::invalid_argument("Game: empty payoff range");
  for (Eigen::Index a = 0; a < payoff_.rows(); ++a) {
    for (Eigen::Index b = 0; b < payoff_.cols(); ++b) {
      const double u = payoff_(a, b);
      if (!std::isfinite(u) || u < range_.lo || u > range_.hi) {
        throw std::invalid_argument("Game: payoff (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") outside declared range");
      }
    }
  }
}

Game Game::normalized() const {
  const double width = range_.hi - range_.lo;
  if (width == 0.0) return Game(PayoffMatrix<double>::Zero(rows(), cols()), {0.0, 1.0});
  PayoffMatrix<double> scaled = (payoff_.array() - range_.lo) / width;
  return Game(std::move(scaled), {0.0, 1.0});
}

Game Game::translated(double kappa) const {
  PayoffMatrix<double> shifted = payoff_.array() + kappa;
  return Game(std::move(shifted), {range_.lo + kappa, range_.hi + kappa});
}

Game coordination_game(int n) {
  if (n < 1) throw std::invalid_argument("coordination_game: N must be >= 1");
  return Game(PayoffMatrix<double>::Identity(n, n), {0.0, 1.0});
}

Game example1_game(bool normalized) {
  PayoffMatrix<double> g(2, 3);
  g << 2, 0, 1,
       0, 2, 1;
  Game game(std::move(g), {0.0, 2.0});
  return normalized ? game.normalized() : game;
}

Game require_unit_range(const Game& game, bool normalize) {
  if (game.has_unit_range()) return game;
  if (normalize) return game.normalized();
  throw std::invalid_argument("game payoff range is not [0,1]; pass the normalize flag");
}

nlohmann::json to_json(const Game& game) {
  nlohmann::json rows = nlohmann::json::array();
  for (int a = 0; a < game.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < game.cols(); ++b) row.push_back(game.payoff(a, b));
    rows.push_back(std::move(row));
  }
  return {{"rows", game.rows()},
          {"cols", game.cols()},
          {"payoff", std::move(rows)},
          {"range", {game.range().lo, game.range().hi}}};
}

Game game_from_json(const nlohmann::json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& payoff = j.at("payoff");
  if (rows < 1 || cols < 1 || payoff.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("game json: row count mismatch");
  }
  PayoffMatrix<double> g(rows, cols);
  for (int a = 0; a < rows; ++a) {
    if (payoff[a].size() != static_cast<std::size_t>(cols)) {
      throw std::invalid_argument("game json: column count mismatch");
    }
    for (int b = 0; b < cols; ++b) g(a, b) = payoff[a][b].get<double>();
  }
  const auto& range = j.at("range");
  return Game(std::move(g), {range.at(0).get<double>(), range.at(1).get<double>()});
}

void History::validate(const Game& game) const {
  for (std::size_t n = 0; n < stages_.size(); ++n) {
    const auto& s = stages_[n];
    if (s.alice < 0 || s.alice >= game.rows() || s.bob < 0 || s.bob >= game.cols()) {
      throw std::out_of_range("history stage " + std::to_string(n + 1) +
                              " has an action outside the game");
    }
  }
}

History repeated(History h, JointAction stage, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) h.push_back(stage);
  return h;
}

}  // namespace repgame
