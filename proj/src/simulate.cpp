#include "repgame/simulate.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "repgame/errors.hpp"
#include "repgame/rng.hpp"

namespace repgame {

History Trajectory::history() const {
  History h;
  for (const auto& s : stages) h.push_back({s.alice, s.bob});
  return h;
}

double Trajectory::average_payoff() const {
  if (stages.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : stages) total += s.payoff;
  return total / static_cast<double>(stages.size());
}

void check_action(const Strategy& s, Action a, int limit, std::size_t stage) {
  if (a < 0 || a >= limit) {
    throw ContractViolation("strategy '" + s.label() + "' emitted action " + std::to_string(a) +
                            " outside [0," + std::to_string(limit) + ") at stage " +
                            std::to_string(stage + 1));
  }
}

StageRecord step(const Game& game, Strategy& pi, Strategy& phi, const History& h) {
  h.validate(game);
  pi.replay(h);
  phi.replay(h);
  const Action a = pi.draw();
  const Action b = phi.draw();
  check_action(pi, a, game.rows(), h.size());
  check_action(phi, b, game.cols(), h.size());
  return {a, b, game.payoff(a, b)};
}

Trajectory rollout(const Game& game, Strategy& pi, Strategy& phi, std::size_t horizon,
                   std::uint64_t seed) {
  pi.reset();
  phi.reset();
  Trajectory t{game, {}, seed};
  t.stages.reserve(horizon);
  play(game, pi, phi, horizon, [&](std::size_t, const StageRecord& r) { t.stages.push_back(r); });
  return t;
}

Trajectory rollout(const Game& game, const StrategyFactory& pi_factory,
                   const StrategyFactory& phi_factory, std::size_t horizon, std::uint64_t seed) {
  auto pi = pi_factory(derive_trial_seed(seed, 0, Stream::learner));
  auto phi = phi_factory(derive_trial_seed(seed, 0, Stream::partner));
  return rollout(game, *pi, *phi, horizon, seed);
}

void write_jsonl(std::ostream& out, const Trajectory& t) {
  for (std::size_t n = 0; n < t.stages.size(); ++n) {
    const auto& s = t.stages[n];
    nlohmann::json line = {{"n", n + 1}, {"a", s.alice}, {"b", s.bob}, {"u", s.payoff}};
    out << line.dump() << '\n';
  }
}

Trajectory read_jsonl(std::istream& in, const Game& game, std::uint64_t seed) {
  Trajectory t{game, {}, seed};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto n = j.at("n").get<std::size_t>();
    if (n != t.stages.size() + 1) throw std::invalid_argument("jsonl: stage numbers out of order");
    StageRecord r{j.at("a").get<Action>(), j.at("b").get<Action>(), j.at("u").get<double>()};
    if (r.alice < 0 || r.alice >= game.rows() || r.bob < 0 || r.bob >= game.cols() ||
        r.payoff != game.payoff(r.alice, r.bob)) {
      throw std::invalid_argument("jsonl: stage " + std::to_string(n) + " inconsistent with game");
    }
    t.stages.push_back(r);
  }
  return t;
}

}  // namespace repgame
