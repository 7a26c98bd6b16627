#include "repgame/machine.hpp"

#include <algorithm>
#include <deque>

#include <boost/multiprecision/eigen.hpp>

#include "repgame/learners.hpp"
#include "repgame/rng.hpp"

namespace repgame {

void Fsm::validate(int own_actions, int opp_actions) const {
  if (states < 1) throw std::invalid_argument("fsm: needs at least one state");
  if (initial < 0 || initial >= states) throw std::invalid_argument("fsm: initial state out of range");
  if (static_cast<int>(output.size()) != states || static_cast<int>(transition.size()) != states) {
    throw std::invalid_argument("fsm: output and transition need one entry per state");
  }
  for (int s = 0; s < states; ++s) {
    const auto i = static_cast<std::size_t>(s);
    if (output[i] < 0 || output[i] >= own_actions) throw std::invalid_argument("fsm: output action out of range");
    if (static_cast<int>(transition[i].size()) != opp_actions) {
      throw std::invalid_argument("fsm: transition row must cover every opponent action");
    }
    for (int next : transition[i]) {
      if (next < 0 || next >= states) throw std::invalid_argument("fsm: transition target out of range");
    }
  }
}

Fsm Fsm::pruned() const {
  std::vector<int> index(static_cast<std::size_t>(states), -1);
  std::vector<int> order{initial};
  index[static_cast<std::size_t>(initial)] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int next : transition[static_cast<std::size_t>(order[k])]) {
      if (index[static_cast<std::size_t>(next)] < 0) {
        index[static_cast<std::size_t>(next)] = static_cast<int>(order.size());
        order.push_back(next);
      }
    }
  }
  Fsm out;
  out.states = static_cast<int>(order.size());
  out.initial = 0;
  for (int s : order) {
    out.output.push_back(output[static_cast<std::size_t>(s)]);
    std::vector<int> row;
    for (int next : transition[static_cast<std::size_t>(s)]) row.push_back(index[static_cast<std::size_t>(next)]);
    out.transition.push_back(std::move(row));
  }
  return out;
}

int Fsm::size() const { return pruned().states; }

PayoffMatrix<Rational> exact_payoffs(const Game& game) {
  PayoffMatrix<Rational> m(game.rows(), game.cols());
  for (int a = 0; a < game.rows(); ++a) {
    for (int b = 0; b < game.cols(); ++b) m(a, b) = decimal_rational(game.payoff(a, b));
  }
  return m;
}

CycleResult<Rational> exact_cycle(const Game& game, const Fsm& m_pi, const Fsm& m_phi) {
  m_pi.validate(game.rows(), game.cols());
  m_phi.validate(game.cols(), game.rows());
  return cycle_average(exact_payoffs(game), m_pi, m_phi);
}

Rational exact_value(const Game& game, const Fsm& m_pi, const Fsm& m_phi) {
  return exact_cycle(game, m_pi, m_phi).value;
}

Belief::Belief(std::vector<std::pair<Fsm, Rational>> support) : support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("belief: empty support");
  Rational total = 0;
  for (const auto& [machine, p] : support_) {
    if (p < 0) throw std::invalid_argument("belief: negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("belief: probabilities must sum to 1");
}

Rational machine_game_value(const Game& game, const Belief& rho, const Fsm& m_phi) {
  Rational v = 0;
  for (const auto& [machine, p] : rho.support()) {
    if (p != 0) v += p * exact_value(game, machine, m_phi);
  }
  return v;
}

RationalityVerdict is_computationally_rational(const Game& game, const Fsm& m_phi, const Belief& rho,
                                               const std::vector<Fsm>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("rationality: empty candidate set");
  RationalityVerdict v;
  v.value = machine_game_value(game, rho, m_phi);
  v.size = m_phi.size();
  std::vector<std::size_t> dominating;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    v.candidate_values.push_back(machine_game_value(game, rho, candidates[i]));
    v.candidate_sizes.push_back(candidates[i].size());
    const Rational& cv = v.candidate_values.back();
    if (cv > v.value || (cv == v.value && v.candidate_sizes.back() < v.size)) dominating.push_back(i);
  }
  if (dominating.empty()) return v;
  v.pass = false;
  v.witness = *std::min_element(dominating.begin(), dominating.end(), [&](std::size_t x, std::size_t y) {
    if (v.candidate_values[x] != v.candidate_values[y]) return v.candidate_values[x] > v.candidate_values[y];
    if (v.candidate_sizes[x] != v.candidate_sizes[y]) return v.candidate_sizes[x] < v.candidate_sizes[y];
    return to_json(candidates[x]).dump() < to_json(candidates[y]).dump();
  });
  return v;
}

Fsm fsm_fixed(Action a, int opponent_actions) {
  if (a < 0 || opponent_actions < 1) throw std::invalid_argument("fsm_fixed: bad arguments");
  return Fsm{1, 0, {a}, {std::vector<int>(static_cast<std::size_t>(opponent_actions), 0)}};
}

Fsm fsm_grim_trigger(const GrimTriggerSpec& spec, int alice_actions) {
  if (spec.expected_alice_action < 0 || spec.expected_alice_action >= alice_actions) {
    throw std::invalid_argument("fsm_grim_trigger: expected action out of range");
  }
  Fsm m{2, 0, {spec.cooperate_action, spec.punish_action}, {}};
  std::vector<int> cooperate(static_cast<std::size_t>(alice_actions), 1);
  cooperate[static_cast<std::size_t>(spec.expected_alice_action)] = 0;
  m.transition = {cooperate, std::vector<int>(static_cast<std::size_t>(alice_actions), 1)};
  return m;
}

Fsm fsm_reactive(const std::vector<Action>& table, Action initial) {
  const int n = static_cast<int>(table.size());
  if (n < 1) throw std::invalid_argument("fsm_reactive: empty table");
  Fsm m{n + 1, 0, {initial}, {}};
  std::vector<int> row(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) row[static_cast<std::size_t>(a)] = a + 1;
  m.transition.push_back(row);
  for (int a = 0; a < n; ++a) {
    m.output.push_back(table[static_cast<std::size_t>(a)]);
    m.transition.push_back(row);
  }
  return m;
}

Fsm fsm_mirror(int n_alice, Action initial) {
  if (n_alice < 1 || initial < 0 || initial >= n_alice) throw std::invalid_argument("fsm_mirror: bad arguments");
  Fsm m{n_alice, initial, {}, {}};
  std::vector<int> row(static_cast<std::size_t>(n_alice));
  for (int a = 0; a < n_alice; ++a) row[static_cast<std::size_t>(a)] = a;
  for (int a = 0; a < n_alice; ++a) {
    m.output.push_back(a);
    m.transition.push_back(row);
  }
  return m;
}

Fsm fsm_switching(const SwitchingSpec& spec) {
  if (!spec.fallback) throw NotEncodable("fsm_switching: the uniform phase randomizes; set a fallback action");
  if (spec.tau == SwitchingSpec::kNever) return fsm_fixed(*spec.fallback, spec.n);
  if (spec.tau > 1'000'000) throw NotEncodable("fsm_switching: tau too large to unroll");
  const int tau = static_cast<int>(spec.tau);
  const int mirror = tau;
  const int other = tau + 1;
  const auto n = static_cast<std::size_t>(spec.n);
  Fsm m;
  m.states = tau + 2;
  m.initial = tau == 0 ? other : 0;
  auto after = [&](int next_counter) {
    std::vector<int> row(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (next_counter < tau) row[a] = next_counter;
      else row[a] = static_cast<Action>(a) == spec.target ? mirror : other;
    }
    return row;
  };
  for (int c = 0; c < tau; ++c) {
    m.output.push_back(*spec.fallback);
    m.transition.push_back(after(c + 1));
  }
  m.output.push_back(spec.target);
  m.transition.push_back(after(tau));
  m.output.push_back(*spec.fallback);
  m.transition.push_back(after(tau));
  return m;
}

Fsm fsm_encode(const Strategy& s, int opponent_actions) {
  if (const auto* f = dynamic_cast<const FixedAction*>(&s)) return fsm_fixed(f->action(), opponent_actions);
  if (const auto* g = dynamic_cast<const GrimTrigger*>(&s)) return fsm_grim_trigger(g->spec(), opponent_actions);
  if (const auto* r = dynamic_cast<const ReactivePartner*>(&s)) {
    if (static_cast<int>(r->table().size()) != opponent_actions) {
      throw std::invalid_argument("fsm_encode: reaction table does not cover the opponent's actions");
    }
    return fsm_reactive(r->table(), r->initial());
  }
  if (const auto* w = dynamic_cast<const SwitchingPartner*>(&s)) return fsm_switching(w->spec());
  throw NotEncodable("fsm_encode: " + s.label() + " has no finite-state encoding");
}

std::vector<Fsm> all_one_state_machines(int own_actions, int opponent_actions) {
  std::vector<Fsm> out;
  for (Action a = 0; a < own_actions; ++a) out.push_back(fsm_fixed(a, opponent_actions));
  return out;
}

std::vector<Fsm> all_machines(int states, int own_actions, int opponent_actions, std::size_t limit) {
  if (states < 1 || own_actions < 1 || opponent_actions < 1) throw std::invalid_argument("all_machines: bad sizes");
  // Digits: initial, one output per state, one target per (state, opponent action).
  std::vector<int> radix{states};
  for (int s = 0; s < states; ++s) radix.push_back(own_actions);
  for (int k = 0; k < states * opponent_actions; ++k) radix.push_back(states);
  double count = 1.0;
  for (int r : radix) count *= r;
  if (count > static_cast<double>(limit)) throw std::invalid_argument("all_machines: too many machines");
  std::vector<int> digit(radix.size(), 0);
  std::vector<Fsm> out;
  while (true) {
    Fsm m;
    m.states = states;
    m.initial = digit[0];
    std::size_t k = 1;
    for (int s = 0; s < states; ++s) m.output.push_back(digit[k++]);
    for (int s = 0; s < states; ++s) {
      std::vector<int> row;
      for (int x = 0; x < opponent_actions; ++x) row.push_back(digit[k++]);
      m.transition.push_back(std::move(row));
    }
    out.push_back(std::move(m));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == radix[i]) digit[i++] = 0;
    if (i == digit.size()) return out;
  }
}

Fsm random_fsm(int states, int own_actions, int opponent_actions, std::uint64_t seed) {
  if (states < 1 || own_actions < 1 || opponent_actions < 1) throw std::invalid_argument("random_fsm: bad sizes");
  std::uint64_t counter = 0;
  auto draw = [&](int n) { return std::min(static_cast<int>(unit_uniform(seed, counter++) * n), n - 1); };
  Fsm m;
  m.states = states;
  m.initial = draw(states);
  for (int s = 0; s < states; ++s) {
    m.output.push_back(draw(own_actions));
    std::vector<int> row;
    for (int x = 0; x < opponent_actions; ++x) row.push_back(draw(states));
    m.transition.push_back(std::move(row));
  }
  return m;
}

FsmStrategy::FsmStrategy(Fsm machine, Role role, int own_actions, std::uint64_t seed)
    : Strategy(seed), machine_(std::move(machine)), role_(role), own_actions_(own_actions),
      state_(machine_.initial) {
  machine_.validate(own_actions, machine_.opponent_actions());
}

void FsmStrategy::on_observe(const JointAction& stage) {
  const Action x = role_ == Role::alice ? stage.bob : stage.alice;
  const auto& row = machine_.transition[static_cast<std::size_t>(state_)];
  if (x < 0 || x >= static_cast<int>(row.size())) throw std::out_of_range("fsm: opponent action out of range");
  state_ = row[static_cast<std::size_t>(x)];
}

nlohmann::json to_json(const Fsm& m) {
  return {{"states", m.states}, {"initial", m.initial}, {"output", m.output}, {"transition", m.transition}};
}

Fsm fsm_from_json(const nlohmann::json& j) {
  Fsm m;
  m.states = j.at("states").get<int>();
  m.initial = j.at("initial").get<int>();
  m.output = j.at("output").get<std::vector<Action>>();
  m.transition = j.at("transition").get<std::vector<std::vector<int>>>();
  if (m.transition.empty()) throw std::invalid_argument("fsm: empty transition table");
  int own = 0;
  for (Action a : m.output) own = std::max(own, a + 1);
  m.validate(std::max(own, 1), m.opponent_actions());
  return m;
}

nlohmann::json to_json(const RationalityVerdict& v) {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < v.candidate_values.size(); ++i) {
    table.push_back({{"candidate", i},
                     {"value", to_fraction_string(v.candidate_values[i])},
                     {"size", v.candidate_sizes[i]}});
  }
  nlohmann::json j = {{"pass", v.pass},
                      {"value", to_fraction_string(v.value)},
                      {"size", v.size},
                      {"candidates", table}};
  j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
  return j;
}

}  // namespace repgame
