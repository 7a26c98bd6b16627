#include "repgame/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "repgame/parallel.hpp"
#include "repgame/rng.hpp"

namespace repgame {

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double ci95(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

namespace {

struct TrialValues {
  double mean = 0.0;
  double tail = 0.0;
  std::vector<double> checkpoints;
};

std::vector<std::size_t> checkpoint_stages(std::size_t horizon) {
  std::vector<std::size_t> stages;
  for (std::size_t c : {horizon / 4, horizon / 2, horizon}) {
    if (c > 0 && (stages.empty() || stages.back() != c)) stages.push_back(c);
  }
  return stages;
}

}  // namespace

ValueEstimate estimate_value(const Game& game, const StrategyFactory& pi_factory,
                             const StrategyFactory& phi_factory, const History& h,
                             const EstimationParams& params, std::size_t burn_in) {
  if (params.trials == 0) throw std::invalid_argument("estimate_value: trials must be positive");
  const std::size_t horizon = params.horizon;
  const std::size_t window = params.window();
  if (horizon == 0 || window > horizon) {
    throw std::invalid_argument("estimate_value: need horizon >= tail_window >= 1");
  }
  h.validate(game);
  const auto stages = checkpoint_stages(horizon);

  std::vector<TrialValues> results(params.trials);
  parallel_for(params.trials, params.parallelism, [&](std::size_t t) {
    auto pi = pi_factory(derive_trial_seed(params.seed, t, Stream::learner));
    auto phi = phi_factory(derive_trial_seed(params.seed, t, Stream::partner));
    pi->replay(h);
    phi->replay(h);
    play(game, *pi, *phi, burn_in, [](std::size_t, const StageRecord&) {});
    std::vector<double> cumulative(horizon + 1, 0.0);
    std::size_t k = 0;
    play(game, *pi, *phi, horizon, [&](std::size_t, const StageRecord& r) {
      cumulative[k + 1] = cumulative[k] + r.payoff;
      ++k;
    });
    TrialValues& out = results[t];
    out.mean = cumulative[horizon] / static_cast<double>(horizon);
    out.tail = (cumulative[horizon] - cumulative[horizon - window]) / static_cast<double>(window);
    for (std::size_t c : stages) {
      const std::size_t w = std::min(window, c);
      out.checkpoints.push_back((cumulative[c] - cumulative[c - w]) / static_cast<double>(w));
    }
  });

  ValueEstimate v;
  v.horizon = horizon;
  v.tail_window = window;
  v.trials = params.trials;
  std::vector<double> means, tails;
  for (const auto& r : results) {
    means.push_back(r.mean);
    tails.push_back(r.tail);
  }
  v.mean = sample_mean(means);
  v.ci_half_width = ci95(means);
  v.tail_mean = sample_mean(tails);
  v.tail_ci = ci95(tails);
  v.liminf_proxy = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    double s = 0.0;
    for (const auto& r : results) s += r.checkpoints[k];
    const double m = s / static_cast<double>(results.size());
    v.checkpoints.push_back({stages[k], m});
    v.liminf_proxy = std::min(v.liminf_proxy, m);
  }
  v.samples = params.value_kind == ValueKind::mean ? std::move(means) : std::move(tails);
  return v;
}

std::vector<Trajectory> sample_trajectories(const Game& game, const StrategyFactory& pi_factory,
                                            const StrategyFactory& phi_factory,
                                            std::size_t trials, std::size_t horizon,
                                            std::uint64_t seed, unsigned parallelism) {
  std::vector<Trajectory> out(trials, Trajectory{game, {}, 0});
  parallel_for(trials, parallelism, [&](std::size_t t) {
    auto pi = pi_factory(derive_trial_seed(seed, t, Stream::learner));
    auto phi = phi_factory(derive_trial_seed(seed, t, Stream::partner));
    out[t] = rollout(game, *pi, *phi, horizon, derive_trial_seed(seed, t, Stream::estimate));
  });
  return out;
}

RegretEstimate adaptive_regret(const Game& game, const StrategyFactory& learner_factory,
                               const StrategyFactory& phi_factory, const ExpertSet& experts,
                               const EstimationParams& params) {
  if (experts.empty()) throw std::invalid_argument("adaptive_regret: empty expert set");
  RegretEstimate r;
  r.learner = estimate_value(game, learner_factory, phi_factory, History{}, params);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < experts.size(); ++i) {
    r.experts.push_back(estimate_value(game, experts.factory(i), phi_factory, History{}, params));
    const double v = r.experts.back().value(params.value_kind);
    if (v > best) {
      best = v;
      r.best_expert = i;
    }
  }
  r.value = best - r.learner.value(params.value_kind);
  const auto& e = r.experts[r.best_expert].samples;
  std::vector<double> diff(e.size());
  for (std::size_t t = 0; t < e.size(); ++t) diff[t] = e[t] - r.learner.samples[t];
  r.ci = ci95(diff);
  return r;
}

TypedRegret type_conditional_regret(const Game& game, const StrategyFactory& learner_factory,
                                    const std::vector<StrategyFactory>& types,
                                    const std::vector<double>& weights, const ExpertSet& experts,
                                    const EstimationParams& params) {
  if (types.empty() || types.size() != weights.size()) {
    throw std::invalid_argument("type_conditional_regret: need one weight per type");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("type_conditional_regret: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("type_conditional_regret: weights sum to zero");
  TypedRegret out;
  double var = 0.0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const double w = weights[i] / total;
    out.weights.push_back(w);
    out.per_type.push_back(adaptive_regret(game, learner_factory, types[i], experts, params));
    out.value += w * out.per_type.back().value;
    var += w * w * out.per_type.back().ci * out.per_type.back().ci;
  }
  out.ci = std::sqrt(var);
  return out;
}

ExternalRegret external_regret(const std::vector<Trajectory>& batch, const Game& game,
                               const std::vector<Action>& experts) {
  if (batch.empty()) throw std::invalid_argument("external_regret: empty batch");
  if (experts.empty()) throw std::invalid_argument("external_regret: empty expert set");
  ExternalRegret out;
  double best = -std::numeric_limits<double>::infinity();
  for (Action e : experts) {
    if (e < 0 || e >= game.rows()) throw std::invalid_argument("external_regret: expert out of range");
    std::vector<double> per;
    for (const auto& t : batch) {
      if (!(t.game == game)) throw std::invalid_argument("external_regret: trajectories use another game");
      if (t.stages.empty()) continue;
      double s = 0.0;
      for (const auto& r : t.stages) s += game.payoff(e, r.bob) - game.payoff(r.alice, r.bob);
      per.push_back(s / static_cast<double>(t.stages.size()));
    }
    if (per.empty()) throw std::invalid_argument("external_regret: all trajectories are empty");
    const double m = sample_mean(per);
    if (m > best) {
      best = m;
      out.value = m;
      out.ci = ci95(per);
      out.best_action = e;
    }
  }
  return out;
}

ExternalRegret external_regret(const Game& game, const StrategyFactory& pi_factory,
                               const StrategyFactory& phi_factory, const std::vector<Action>& experts,
                               const EstimationParams& params) {
  if (params.trials == 0 || params.horizon == 0) throw std::invalid_argument("external_regret: empty batch");
  if (experts.empty()) throw std::invalid_argument("external_regret: empty expert set");
  for (Action e : experts) {
    if (e < 0 || e >= game.rows()) throw std::invalid_argument("external_regret: expert out of range");
  }
  std::vector<std::vector<double>> per(experts.size(), std::vector<double>(params.trials));
  parallel_for(params.trials, params.parallelism, [&](std::size_t t) {
    auto pi = pi_factory(derive_trial_seed(params.seed, t, Stream::learner));
    auto phi = phi_factory(derive_trial_seed(params.seed, t, Stream::partner));
    std::vector<double> sums(experts.size(), 0.0);
    play(game, *pi, *phi, params.horizon, [&](std::size_t, const StageRecord& r) {
      for (std::size_t i = 0; i < experts.size(); ++i) sums[i] += game.payoff(experts[i], r.bob) - r.payoff;
    });
    for (std::size_t i = 0; i < experts.size(); ++i) per[i][t] = sums[i] / static_cast<double>(params.horizon);
  });
  ExternalRegret out;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < experts.size(); ++i) {
    const double m = sample_mean(per[i]);
    if (m > best) {
      best = m;
      out = {m, ci95(per[i]), experts[i]};
    }
  }
  return out;
}

ScriptedThenFixed::ScriptedThenFixed(std::vector<Action> script, Action then, int n,
                                     std::uint64_t seed)
    : Strategy(seed), script_(std::move(script)), then_(then), n_(n) {
  auto bad = [n](Action a) { return a < 0 || a >= n; };
  if (bad(then) || std::any_of(script_.begin(), script_.end(), bad)) {
    throw std::invalid_argument("scripted strategy: action out of range");
  }
}

OpenEndedRegret open_ended_regret(const Game& game, const StrategyFactory& learner_factory,
                                  const StrategyFactory& phi_factory,
                                  const std::vector<Action>& experts, std::size_t depth,
                                  const EstimationParams& params, std::size_t prefix_budget) {
  if (experts.empty()) throw std::invalid_argument("open_ended_regret: empty expert set");
  OpenEndedRegret out;
  const int n = game.rows();
  const ValueKind kind = params.value_kind;
  double best = -std::numeric_limits<double>::infinity();
  double best_ci = 0.0;
  for (Action e : experts) {
    double worst = std::numeric_limits<double>::infinity();
    double worst_ci = 0.0;
    std::vector<Action> witness;
    std::size_t scored = 0;
    for (std::size_t len = 0; len <= depth && !out.partial; ++len) {
      std::vector<Action> prefix(len, 0);
      while (true) {
        if (scored == prefix_budget) {
          out.partial = true;
          break;
        }
        const StrategyFactory pi = [prefix, e, n](std::uint64_t seed) {
          return std::make_unique<ScriptedThenFixed>(prefix, e, n, seed);
        };
        const ValueEstimate v = estimate_value(game, pi, phi_factory, History{}, params, len);
        ++scored;
        if (v.value(kind) < worst) {
          worst = v.value(kind);
          worst_ci = v.ci(kind);
          witness = prefix;
        }
        std::size_t i = 0;
        while (i < len && ++prefix[i] == n) prefix[i++] = 0;
        if (i == len) break;
      }
    }
    out.prefixes_evaluated += scored;
    out.guaranteed.push_back(worst);
    out.guaranteed_ci.push_back(worst_ci);
    out.witness.push_back(witness);
    if (worst > best) {
      best = worst;
      best_ci = worst_ci;
    }
  }
  out.learner = estimate_value(game, learner_factory, phi_factory, History{}, params);
  out.value = best - out.learner.value(kind);
  out.ci = std::hypot(best_ci, out.learner.ci(kind));
  return out;
}

std::size_t last_switch_index(const Trajectory& t) {
  for (std::size_t k = t.stages.size(); k-- > 1;) {
    if (t.stages[k].alice != t.stages[k - 1].alice) return k;
  }
  return 0;
}

CommitTime estimate_commit_time(const Game& game, const StrategyFactory& learner_factory,
                                const StrategyFactory& phi_factory, double delta,
                                std::size_t trials, std::size_t horizon, std::uint64_t seed,
                                std::size_t window, unsigned parallelism) {
  if (trials == 0 || horizon == 0) throw std::invalid_argument("estimate_commit_time: empty budget");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("estimate_commit_time: delta outside (0,1)");
  CommitTime out;
  out.window = window ? std::min(window, horizon) : std::max<std::size_t>(horizon / 2, 1);

  std::vector<std::size_t> last(trials);
  std::vector<Action> final_action(trials);
  parallel_for(trials, parallelism, [&](std::size_t t) {
    auto pi = learner_factory(derive_trial_seed(seed, t, Stream::learner));
    auto phi = phi_factory(derive_trial_seed(seed, t, Stream::partner));
    std::size_t ls = 0;
    Action prev = -1;
    play(game, *pi, *phi, horizon, [&](std::size_t n, const StageRecord& r) {
      if (n > 0 && r.alice != prev) ls = n;
      prev = r.alice;
    });
    last[t] = ls;
    final_action[t] = prev;
  });

  std::size_t tail_switches = 0;
  for (std::size_t ls : last) {
    if (ls > 0 && ls >= horizon - out.window) ++tail_switches;
  }
  out.gamma_hat = static_cast<double>(tail_switches) / static_cast<double>(trials);
  out.last_switch = last;
  out.p.assign(static_cast<std::size_t>(game.rows()), 0.0);
  if (out.gamma_hat + delta >= 1.0) {
    out.degenerate = true;
    out.tau = 0;
    return out;
  }

  // Largest number of trials allowed to switch after tau.
  const auto allowed = static_cast<std::size_t>(std::floor((out.gamma_hat + delta) * static_cast<double>(trials) + 1e-9));
  std::vector<std::size_t> sorted = last;
  std::sort(sorted.begin(), sorted.end());
  out.tau = allowed >= trials ? 0 : sorted[trials - allowed - 1];

  for (std::size_t t = 0; t < trials; ++t) {
    if (last[t] > out.tau) continue;
    ++out.converged_trials;
    out.p[static_cast<std::size_t>(final_action[t])] += 1.0;
  }
  if (out.converged_trials > 0) {
    for (double& p : out.p) p /= static_cast<double>(out.converged_trials);
  }
  return out;
}

nlohmann::json to_json(const ValueEstimate& v) {
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& c : v.checkpoints) cps.push_back({{"stage", c.stage}, {"tail_mean", c.tail_mean}});
  return {{"mean", v.mean},
          {"ci_half_width", v.ci_half_width},
          {"tail_mean", v.tail_mean},
          {"tail_ci", v.tail_ci},
          {"liminf_proxy", v.liminf_proxy},
          {"horizon", v.horizon},
          {"tail_window", v.tail_window},
          {"trials", v.trials},
          {"checkpoints", cps}};
}

nlohmann::json to_json(const RegretEstimate& r) {
  nlohmann::json experts = nlohmann::json::array();
  for (const auto& e : r.experts) experts.push_back(to_json(e));
  return {{"regret", r.value},
          {"ci", r.ci},
          {"best_expert", r.best_expert},
          {"learner", to_json(r.learner)},
          {"experts", experts}};
}

nlohmann::json to_json(const CommitTime& c) {
  return {{"tau", c.tau},         {"gamma_hat", c.gamma_hat}, {"degenerate", c.degenerate},
          {"window", c.window},   {"p", c.p},                 {"converged_trials", c.converged_trials}};
}

}  // namespace repgame
