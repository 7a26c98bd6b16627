#include "repgame/harness/registry.hpp"

#include <algorithm>
#include <fstream>

#include "repgame/exploiter.hpp"
#include "repgame/partners.hpp"
#include "repgame/rng.hpp"

namespace repgame::harness {

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

void require_kind(const std::string& kind, const std::vector<std::string>& allowed, const std::string& section) {
  if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) {
    throw ConfigError("config: unknown kind '" + kind + "' in [" + section + "]; expected one of: " + join(allowed));
  }
}

/// Runs `f`, turning argument errors from the library into config errors.
template <typename F>
auto checked(const std::string& section, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config: [" + section + "]: " + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError("config: [" + section + "]: " + e.what());
  }
}

int to_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + where + ": '" + s + "' is not an integer");
  }
}

std::vector<double> to_doubles(const std::vector<std::string>& tokens, const std::string& where) {
  std::vector<double> out;
  for (const auto& t : tokens) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError("config: " + where + ": '" + t + "' is not a number");
    }
  }
  return out;
}

std::vector<Action> to_actions(const std::vector<std::string>& tokens, const std::string& where) {
  std::vector<Action> out;
  for (const auto& t : tokens) out.push_back(to_int(t, where));
  return out;
}

}  // namespace

const std::vector<std::string>& game_kinds() {
  static const std::vector<std::string> k{"coordination", "example1", "matrix", "json"};
  return k;
}

const std::vector<std::string>& learner_kinds() {
  static const std::vector<std::string> k{"fixed",    "explore_then_commit", "strategic_experts", "mixed",
                                          "coin_commit", "periodic",         "random_switcher",   "fsm"};
  return k;
}

const std::vector<std::string>& partner_kinds() {
  static const std::vector<std::string> k{"uniform",  "stationary", "grim_trigger", "switching",
                                          "fictitious_play", "mirror", "reactive", "mixture",
                                          "exploiter", "theorem1", "switching_adversary", "fsm"};
  return k;
}

const std::vector<std::string>& metric_kinds() {
  static const std::vector<std::string> k{"simulate",         "value",          "adaptive_regret",
                                          "external_regret",  "open_ended_regret", "check_open_ended",
                                          "check_flexibility", "commit_time",   "exploit",
                                          "bounds",           "fsm_value",      "fsm_rationality"};
  return k;
}

Game make_game(const Config& c, const std::string& section) {
  const std::string kind = c.get(section, "kind", "coordination");
  require_kind(kind, game_kinds(), section);
  return checked(section, [&]() -> Game {
    if (kind == "coordination") return coordination_game(static_cast<int>(c.get_int(section, "n", 3)));
    if (kind == "example1") return example1_game(c.get_bool(section, "normalized", false));
    if (kind == "json") {
      std::ifstream in(c.get(section, "path"));
      if (!in) throw ConfigError("config: [" + section + "] cannot read " + c.get(section, "path"));
      try {
        return game_from_json(nlohmann::json::parse(in));
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: [" + section + "] bad game JSON: " + e.what());
      }
    }
    std::vector<std::vector<double>> rows;
    std::string row;
    for (char ch : c.get(section, "payoff") + ";") {
      if (ch == ';') {
        if (!split_list(row).empty()) rows.push_back(to_doubles(split_list(row), "[" + section + "] payoff"));
        row.clear();
      } else {
        row += ch;
      }
    }
    if (rows.empty()) throw ConfigError("config: [" + section + "] payoff is empty");
    PayoffMatrix<double> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) throw ConfigError("config: [" + section + "] ragged payoff rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    const auto range = to_doubles(c.get_list(section, "range"), "[" + section + "] range");
    PayoffRange r{m.minCoeff(), m.maxCoeff()};
    if (!range.empty()) {
      if (range.size() != 2) throw ConfigError("config: [" + section + "] range needs two numbers");
      r = {range[0], range[1]};
    }
    return Game(m, r);
  });
}

ExpertSet make_experts(const Config& c, const Game& game) {
  const std::string kind = c.get("experts", "kind", "fixed_actions");
  if (kind != "fixed_actions") require_kind(kind, {"fixed_actions"}, "experts");
  return checked("experts", [&] {
    const auto listed = c.get_list("experts", "actions");
    if (listed.empty()) return ExpertSet::fixed_actions(game.rows());
    return ExpertSet::fixed_actions(to_actions(listed, "[experts] actions"), game.rows());
  });
}

EstimationParams make_estimation(const Config& c) {
  EstimationParams p;
  p.trials = static_cast<std::size_t>(c.get_u64("estimation", "trials", p.trials));
  p.horizon = static_cast<std::size_t>(c.get_u64("estimation", "horizon", p.horizon));
  p.tail_window = static_cast<std::size_t>(c.get_u64("estimation", "tail_window", 0));
  p.seed = c.get_u64("scenario", "seed", 0);
  p.parallelism = static_cast<unsigned>(c.get_u64("scenario", "parallelism", 1));
  const std::string kind = c.get("estimation", "value_kind", "mean");
  if (kind != "mean" && kind != "tail") require_kind(kind, {"mean", "tail"}, "estimation");
  p.value_kind = kind == "mean" ? ValueKind::mean : ValueKind::tail;
  if (p.trials == 0) throw ConfigError("config: [estimation] trials must be positive");
  if (p.horizon == 0 || p.window() > p.horizon) {
    throw ConfigError("config: [estimation] need horizon >= tail_window >= 1");
  }
  return p;
}

CommitParams make_commit(const Config& c, const EstimationParams& est) {
  CommitParams p;
  p.trials = static_cast<std::size_t>(c.get_u64("estimation", "commit_trials", est.trials));
  p.horizon = static_cast<std::size_t>(c.get_u64("estimation", "commit_horizon", est.horizon));
  p.window = static_cast<std::size_t>(c.get_u64("estimation", "commit_window", 0));
  p.seed = derive_trial_seed(est.seed, 1, Stream::estimate);
  p.parallelism = est.parallelism;
  if (p.trials == 0 || p.horizon == 0) throw ConfigError("config: [estimation] commit budget must be positive");
  return p;
}

OracleParams make_oracle(const Config& c, const std::string& section, const EstimationParams& est) {
  OracleParams o;
  o.trials = static_cast<std::size_t>(c.get_u64(section, "oracle_trials", 32));
  o.replicas = static_cast<std::size_t>(c.get_u64(section, "oracle_replicas", 8));
  o.sigma_cap = static_cast<std::size_t>(c.get_u64(section, "sigma_cap", o.sigma_cap));
  o.stage_limit = static_cast<std::size_t>(c.get_u64(section, "stage_limit", est.horizon));
  o.seed = derive_trial_seed(est.seed, 2, Stream::oracle);
  if (o.trials == 0 || o.replicas == 0) throw ConfigError("config: [" + section + "] oracle budget must be positive");
  return o;
}

StrategyFactory make_learner(const Config& c, const std::string& section, const Game& game,
                             const ExpertSet& experts) {
  if (!c.has_section(section)) throw ConfigError("config: missing section [" + section + "]");
  const std::string kind = c.get(section, "kind");
  require_kind(kind, learner_kinds(), section);
  const int n = game.rows();
  StrategyFactory f;
  if (kind == "fixed") {
    const Action a = static_cast<Action>(c.require_int(section, "action"));
    f = [a, n](std::uint64_t s) { return fixed_expert(a, n, s); };
  } else if (kind == "explore_then_commit") {
    const auto t = static_cast<std::size_t>(c.get_u64(section, "exploration", 300));
    const std::string scheme = c.get(section, "scheme", "blocks");
    if (scheme != "blocks" && scheme != "interleaved") require_kind(scheme, {"blocks", "interleaved"}, section);
    const EvalScheme sc = scheme == "blocks" ? EvalScheme::blocks : EvalScheme::interleaved;
    f = [game, experts, t, sc](std::uint64_t s) { return explore_then_commit(game, experts, t, s, sc); };
  } else if (kind == "strategic_experts") {
    EpsilonSchedule eps;
    eps.epsilon = c.get_double(section, "epsilon", eps.epsilon);
    const std::string schedule = c.get(section, "epsilon_schedule", "constant");
    if (schedule != "constant" && schedule != "inverse_sqrt") {
      require_kind(schedule, {"constant", "inverse_sqrt"}, section);
    }
    eps.kind = schedule == "constant" ? EpsilonSchedule::Kind::constant : EpsilonSchedule::Kind::inverse_sqrt;
    HorizonRule rule{c.get_double(section, "horizon_scale", 1.0), c.get_double(section, "horizon_power", 1.0)};
    f = [game, experts, eps, rule](std::uint64_t s) { return strategic_experts(game, experts, eps, rule, s); };
  } else if (kind == "mixed") {
    const double p = c.get_double(section, "p", 0.5);
    const auto passive = make_learner(c, c.get(section, "passive", "passive"), game, experts);
    const auto active = make_learner(c, c.get(section, "active", "active"), game, experts);
    f = [passive, active, p](std::uint64_t s) { return mixed_learner(passive(s), active(s), p, s); };
  } else if (kind == "coin_commit") {
    auto acts = to_actions(c.get_list(section, "actions"), "[" + section + "] actions");
    if (acts.empty()) acts = {0, 1};
    if (acts.size() != 2) throw ConfigError("config: [" + section + "] coin_commit needs two actions");
    f = [acts, n](std::uint64_t s) { return coin_commit(acts[0], acts[1], n, s); };
  } else if (kind == "periodic") {
    const auto period = static_cast<std::size_t>(c.get_u64(section, "period", 10));
    f = [period, n](std::uint64_t s) { return std::make_unique<PeriodicSwitcher>(period, n, s); };
  } else if (kind == "random_switcher") {
    const double p = c.get_double(section, "switch_prob", 0.5);
    f = [p, n](std::uint64_t s) { return std::make_unique<RandomSwitcher>(p, n, s); };
  } else {
    const Fsm m = make_machine(c.get(section, "machine"), game, Role::alice);
    f = [m, n](std::uint64_t s) { return std::make_unique<FsmStrategy>(m, Role::alice, n, s); };
  }
  checked(section, [&] { return f(0); });
  return f;
}

namespace {

StrategyFactory simple_partner(const Config& c, const std::string& section, const std::string& kind,
                               const Game& game, const ExpertSet& experts,
                               const StrategyFactory& learner, const EstimationParams& est);

void mixture_parts(const Config& c, const std::string& section, const Game& game, const ExpertSet& experts,
                   const StrategyFactory& learner, const EstimationParams& est,
                   std::vector<StrategyFactory>& parts, std::vector<double>& weights) {
  const auto names = c.get_list(section, "components");
  if (names.empty()) throw ConfigError("config: [" + section + "] mixture needs components");
  weights = to_doubles(c.get_list(section, "weights"), "[" + section + "] weights");
  if (weights.empty()) weights.assign(names.size(), 1.0 / static_cast<double>(names.size()));
  if (weights.size() != names.size()) throw ConfigError("config: [" + section + "] needs one weight per component");
  for (const auto& name : names) {
    if (!c.has_section(name)) throw ConfigError("config: mixture component [" + name + "] is missing");
    const std::string k = c.get(name, "kind");
    require_kind(k, partner_kinds(), name);
    if (k == "exploiter" || k == "theorem1" || k == "switching_adversary" || k == "mixture") {
      throw ConfigError("config: [" + name + "] cannot be a mixture component");
    }
    parts.push_back(simple_partner(c, name, k, game, experts, learner, est));
  }
}

StrategyFactory simple_partner(const Config& c, const std::string& section, const std::string& kind,
                               const Game& game, const ExpertSet& experts,
                               const StrategyFactory& learner, const EstimationParams& est) {
  const int nb = game.cols();
  if (kind == "uniform") return [nb](std::uint64_t s) { return uniform_partner(nb, s); };
  if (kind == "stationary") {
    const auto probs = to_doubles(c.get_list(section, "probs"), "[" + section + "] probs");
    Eigen::VectorXd p(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i) p(static_cast<Eigen::Index>(i)) = probs[i];
    const ActionDistribution d = checked(section, [&] { return ActionDistribution(p); });
    if (d.size() != nb) throw ConfigError("config: [" + section + "] probs must cover Bob's actions");
    return [d](std::uint64_t s) { return stationary_partner(d, s); };
  }
  if (kind == "grim_trigger") {
    GrimTriggerSpec spec;
    if (c.has(section, "which")) {
      spec = checked(section, [&] { return example1_trigger(static_cast<int>(c.require_int(section, "which"))); });
    } else {
      spec = {static_cast<Action>(c.require_int(section, "expected")),
              static_cast<Action>(c.require_int(section, "cooperate")),
              static_cast<Action>(c.require_int(section, "punish"))};
    }
    return [spec, nb](std::uint64_t s) { return grim_trigger(spec, nb, s); };
  }
  if (kind == "switching") {
    SwitchingSpec spec;
    const std::string tau = c.get(section, "tau", "0");
    spec.tau = tau == "inf" ? SwitchingSpec::kNever : static_cast<std::size_t>(c.get_u64(section, "tau", 0));
    spec.target = static_cast<Action>(c.get_int(section, "target", 0));
    spec.n = nb;
    if (c.has(section, "fallback")) spec.fallback = static_cast<Action>(c.require_int(section, "fallback"));
    return [spec](std::uint64_t s) { return switching_partner(spec, s); };
  }
  if (kind == "fictitious_play") return [game](std::uint64_t s) { return fictitious_play_partner(game, s); };
  if (kind == "mirror") {
    const auto initial = static_cast<Action>(c.get_int(section, "initial", 0));
    const int na = game.rows();
    return [na, nb, initial](std::uint64_t s) { return mirror_partner(na, nb, initial, s); };
  }
  if (kind == "reactive") {
    const auto table = to_actions(c.get_list(section, "table"), "[" + section + "] table");
    if (static_cast<int>(table.size()) != game.rows()) {
      throw ConfigError("config: [" + section + "] table needs one entry per Alice action");
    }
    const auto initial = static_cast<Action>(c.get_int(section, "initial", 0));
    return [table, initial, nb](std::uint64_t s) { return std::make_unique<ReactivePartner>(table, initial, nb, s); };
  }
  if (kind == "mixture") {
    std::vector<StrategyFactory> parts;
    std::vector<double> weights;
    mixture_parts(c, section, game, experts, learner, est, parts, weights);
    return [parts, weights](std::uint64_t s) {
      std::vector<std::unique_ptr<Strategy>> built;
      for (std::size_t i = 0; i < parts.size(); ++i) built.push_back(parts[i](derive_trial_seed(s, i, Stream::partner)));
      return mixture_partner(std::move(built), weights, s);
    };
  }
  const Fsm m = make_machine(c.get(section, "machine"), game, Role::bob);
  return [m, nb](std::uint64_t s) { return std::make_unique<FsmStrategy>(m, Role::bob, nb, s); };
}

}  // namespace

PartnerRecipe make_partner(const Config& c, const std::string& section, const Game& game,
                           const ExpertSet& experts, const StrategyFactory& learner,
                           const EstimationParams& est) {
  if (!c.has_section(section)) throw ConfigError("config: missing section [" + section + "]");
  const std::string kind = c.get(section, "kind");
  require_kind(kind, partner_kinds(), section);
  PartnerRecipe recipe;
  recipe.kind = kind;

  if (kind == "exploiter" || kind == "theorem1" || kind == "switching_adversary") {
    if (!learner) throw ConfigError("config: [" + section + "] " + kind + " needs a [learner]");
    const double delta = c.get_double(section, "delta", 0.1);
    const OracleParams oracle = make_oracle(c, section, est);
    const CommitParams commit = make_commit(c, est);
    if (kind == "exploiter") {
      checked(section, [&] { return predictive_exploiter(learner, game, delta, oracle, 0); });
      recipe.build = [learner, game, delta, oracle](nlohmann::json& diag) -> StrategyFactory {
        diag = {{"branch", "exploiter"}, {"delta", delta}};
        return [=](std::uint64_t s) { return predictive_exploiter(learner, game, delta, oracle, s); };
      };
    } else if (kind == "theorem1") {
      const int n = game.rows();
      if (n < 3 || !(game == coordination_game(n))) {
        throw ConfigError("config: [" + section + "] theorem1 needs an N x N coordination game with N >= 3");
      }
      if (!(delta > 0.0 && delta < static_cast<double>(n - 2) / n)) {
        throw ConfigError("config: [" + section + "] delta must lie in (0, (N-2)/N)");
      }
      recipe.build = [learner, game, delta, oracle, commit](nlohmann::json& diag) {
        AdversaryPlan plan = theorem1_adversary(game, learner, delta, commit, oracle);
        diag = to_json(plan);
        return plan.factory;
      };
    } else {
      if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("config: [" + section + "] delta must lie in (0, 1)");
      recipe.build = [learner, game, delta, commit](nlohmann::json& diag) {
        SwitchingPlan plan = construct_switching_adversary(game, learner, delta, commit);
        diag = {{"branch", "switching"}, {"target", plan.target}, {"commit", to_json(plan.commit)}};
        return plan.factory;
      };
    }
    return recipe;
  }

  const StrategyFactory f = simple_partner(c, section, kind, game, experts, learner, est);
  checked(section, [&] {
    auto s = f(0);
    if (s->num_actions() != game.cols()) throw std::invalid_argument("partner action count does not match the game");
    return s;
  });
  recipe.build = [f](nlohmann::json&) { return f; };
  if (kind == "mixture") mixture_parts(c, section, game, experts, learner, est, recipe.types, recipe.weights);
  return recipe;
}

Fsm make_machine(const std::string& spec, const Game& game, Role role) {
  const int own = role == Role::alice ? game.rows() : game.cols();
  const int opp = role == Role::alice ? game.cols() : game.rows();
  std::vector<std::string> parts;
  std::string token;
  for (char ch : spec + ":") {
    if (ch == ':') {
      parts.push_back(token);
      token.clear();
    } else {
      token += ch;
    }
  }
  const std::string& kind = parts[0];
  const std::string where = "machine '" + spec + "'";
  auto arg = [&](std::size_t i) {
    if (i >= parts.size() || parts[i].empty()) throw ConfigError("config: " + where + " is missing an argument");
    return to_int(parts[i], where);
  };
  Fsm m;
  if (kind == "fixed") {
    m = fsm_fixed(arg(1), opp);
  } else if (kind == "grim") {
    const GrimTriggerSpec g = parts.size() > 3 ? GrimTriggerSpec{arg(1), arg(2), arg(3)}
                                                : checked("fsm", [&] { return example1_trigger(arg(1)); });
    m = fsm_grim_trigger(g, opp);
  } else if (kind == "mirror") {
    m = fsm_mirror(opp, parts.size() > 1 && !parts[1].empty() ? arg(1) : 0);
  } else if (kind == "switching") {
    SwitchingSpec s{static_cast<std::size_t>(arg(1)), arg(2), own, arg(3)};
    m = checked("fsm", [&] { return fsm_switching(s); });
  } else if (kind == "json") {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read machine file " + path);
    try {
      m = fsm_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config: bad machine JSON in " + path + ": " + e.what());
    }
  } else {
    throw ConfigError("config: unknown machine kind in '" + spec + "'");
  }
  checked("fsm", [&] {
    m.validate(own, opp);
    return 0;
  });
  return m;
}

}  // namespace repgame::harness
