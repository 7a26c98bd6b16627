#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "repgame/bounds.hpp"
#include "repgame/game.hpp"
#include "repgame/partners.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

/// Deterministic finite-state strategy. transition[s][x] is the next state
/// after observing opponent action x in state s.
struct Fsm {
  int states = 1;
  int initial = 0;
  std::vector<Action> output;
  std::vector<std::vector<int>> transition;

  int opponent_actions() const { return transition.empty() ? 0 : static_cast<int>(transition[0].size()); }
  /// Throws std::invalid_argument unless the machine is total and its outputs
  /// lie in [0, own_actions) and its transitions cover opp_actions.
  void validate(int own_actions, int opp_actions) const;
  /// Number of states reachable from the initial state.
  int size() const;
  /// Drops unreachable states, renumbering the rest in discovery order.
  Fsm pruned() const;

  bool operator==(const Fsm&) const = default;
};

enum class Role { alice, bob };

template <typename Scalar>
struct CycleResult {
  Scalar value{};
  std::size_t transient = 0;
  std::size_t cycle_length = 0;
  std::size_t steps = 0;
};

/// Runs the joint system until a state pair repeats and averages the payoff
/// over the cycle. Terminates within |S_alice| * |S_bob| + 1 steps.
template <typename Scalar>
CycleResult<Scalar> cycle_average(const PayoffMatrix<Scalar>& payoff, const Fsm& alice, const Fsm& bob) {
  std::map<std::pair<int, int>, std::size_t> seen;
  std::vector<Scalar> payoffs;
  int sa = alice.initial;
  int sb = bob.initial;
  for (std::size_t step = 0;; ++step) {
    const auto [it, inserted] = seen.emplace(std::make_pair(sa, sb), step);
    if (!inserted) {
      CycleResult<Scalar> out;
      out.transient = it->second;
      out.cycle_length = step - it->second;
      out.steps = step + 1;
      Scalar total{0};
      for (std::size_t k = it->second; k < step; ++k) total += payoffs[k];
      out.value = total / Scalar(static_cast<long>(out.cycle_length));
      return out;
    }
    const Action a = alice.output[static_cast<std::size_t>(sa)];
    const Action b = bob.output[static_cast<std::size_t>(sb)];
    payoffs.push_back(payoff(a, b));
    sa = alice.transition[static_cast<std::size_t>(sa)][static_cast<std::size_t>(b)];
    sb = bob.transition[static_cast<std::size_t>(sb)][static_cast<std::size_t>(a)];
  }
}

/// Payoff matrix with every entry read as its shortest round-trip decimal.
PayoffMatrix<Rational> exact_payoffs(const Game& game);

/// Limit-average value of the induced play, exactly.
Rational exact_value(const Game& game, const Fsm& m_pi, const Fsm& m_phi);
CycleResult<Rational> exact_cycle(const Game& game, const Fsm& m_pi, const Fsm& m_phi);

/// Bob's belief over Alice's machines; probabilities must sum to exactly 1.
class Belief {
 public:
  explicit Belief(std::vector<std::pair<Fsm, Rational>> support);

  const std::vector<std::pair<Fsm, Rational>>& support() const { return support_; }

 private:
  std::vector<std::pair<Fsm, Rational>> support_;
};

Rational machine_game_value(const Game& game, const Belief& rho, const Fsm& m_phi);

struct RationalityVerdict {
  bool pass = true;
  std::optional<std::size_t> witness;
  Rational value;
  int size = 0;
  std::vector<Rational> candidate_values;
  std::vector<int> candidate_sizes;
};

/// PASS iff no candidate has a strictly higher machine-game value, or an
/// equal value with a strictly smaller machine. A failing verdict names the
/// dominating candidate with the highest value, then the smallest size, then
/// the smallest JSON encoding, so the witness does not depend on ordering.
RationalityVerdict is_computationally_rational(const Game& game, const Fsm& m_phi, const Belief& rho,
                                               const std::vector<Fsm>& candidates);

class NotEncodable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Fsm fsm_fixed(Action a, int opponent_actions);
Fsm fsm_grim_trigger(const GrimTriggerSpec& spec, int alice_actions);
/// Bob plays table[a(h)], `initial` on the empty history: |table| + 1 states.
Fsm fsm_reactive(const std::vector<Action>& table, Action initial);
/// One state per Alice action; state a plays a. Needs n_alice <= Bob actions.
Fsm fsm_mirror(int n_alice, Action initial);
/// Needs spec.fallback; the uniform phase itself cannot be encoded.
Fsm fsm_switching(const SwitchingSpec& spec);

/// Encodes a known deterministic strategy; throws NotEncodable for anything
/// that randomizes.
Fsm fsm_encode(const Strategy& s, int opponent_actions);

/// Every 1-state machine over `own_actions`.
std::vector<Fsm> all_one_state_machines(int own_actions, int opponent_actions);
/// Every machine with exactly `states` states, initial state included.
/// Throws when there would be more than `limit` of them.
std::vector<Fsm> all_machines(int states, int own_actions, int opponent_actions, std::size_t limit = 1'000'000);
Fsm random_fsm(int states, int own_actions, int opponent_actions, std::uint64_t seed);

/// Behavioral view of a machine, usable with the simulator.
class FsmStrategy final : public Strategy {
 public:
  FsmStrategy(Fsm machine, Role role, int own_actions, std::uint64_t seed = 0);

  int num_actions() const override { return own_actions_; }
  std::string label() const override { return "fsm(" + std::to_string(machine_.states) + ")"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FsmStrategy>(*this); }
  ActionDistribution policy() const override { return ActionDistribution::point_mass(own_actions_, current()); }
  double probability(Action a) const override { return a == current() ? 1.0 : 0.0; }
  Action sample(double) const override { return current(); }

  int state() const { return state_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override { state_ = machine_.initial; }

 private:
  Action current() const { return machine_.output[static_cast<std::size_t>(state_)]; }

  Fsm machine_;
  Role role_;
  int own_actions_;
  int state_;
};

nlohmann::json to_json(const Fsm& m);
Fsm fsm_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalityVerdict& v);

}  // namespace repgame
