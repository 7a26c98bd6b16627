#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "repgame/game.hpp"

namespace repgame {

struct JointAction {
  Action alice = 0;
  Action bob = 0;

  bool operator==(const JointAction&) const = default;
};

/// Finite sequence of joint actions, oldest first.
class History {
 public:
  History() = default;
  explicit History(std::vector<JointAction> stages) : stages_(std::move(stages)) {}

  std::size_t size() const { return stages_.size(); }
  bool empty() const { return stages_.empty(); }
  const JointAction& operator[](std::size_t i) const { return stages_[i]; }
  auto begin() const { return stages_.begin(); }
  auto end() const { return stages_.end(); }
  const std::vector<JointAction>& stages() const { return stages_; }

  void push_back(JointAction stage) { stages_.push_back(stage); }

  /// Alice's most recent action; empty for the empty history.
  std::optional<Action> last_alice_action() const {
    if (stages_.empty()) return std::nullopt;
    return stages_.back().alice;
  }

  /// Throws std::out_of_range when an action index is outside the game.
  void validate(const Game& game) const;

  History prefix(std::size_t n) const {
    return History({stages_.begin(), stages_.begin() + static_cast<std::ptrdiff_t>(n)});
  }

  bool operator==(const History&) const = default;

 private:
  std::vector<JointAction> stages_;
};

/// Builds `count` copies of one joint action, appended to `h`.
History repeated(History h, JointAction stage, std::size_t count);

}  // namespace repgame
