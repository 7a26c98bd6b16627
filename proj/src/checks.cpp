#include "repgame/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "repgame/parallel.hpp"
#include "repgame/partners.hpp"
#include "repgame/rng.hpp"
#include "repgame/simulate.hpp"

namespace repgame {

std::vector<History> sample_histories(const Game& game, const StrategyFactory& phi_factory,
                                      std::size_t count, std::size_t max_length,
                                      std::uint64_t seed) {
  std::vector<History> out;
  const int n = game.rows();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_trial_seed(seed, i, Stream::sampler);
    const auto length = std::min(max_length, static_cast<std::size_t>(unit_uniform(s, 0) * static_cast<double>(max_length + 1)));
    const auto run_action = static_cast<Action>((i / 3) % static_cast<std::size_t>(n));
    std::vector<Action> script(length);
    for (std::size_t k = 0; k < length; ++k) {
      const bool random = i % 3 == 0 || (i % 3 == 2 && k < length / 2);
      script[k] = random ? std::min(static_cast<Action>(unit_uniform(s, k + 1) * n), n - 1) : run_action;
    }
    ScriptedThenFixed alice(script, 0, n, s);
    auto bob = phi_factory(derive_trial_seed(seed, i, Stream::partner));
    out.push_back(rollout(game, alice, *bob, length).history());
  }
  return out;
}

OpenEndedReport check_open_ended(const Game& game, const StrategyFactory& phi_factory,
                                 const ExpertSet& experts, const std::vector<History>& histories,
                                 double tolerance, const EstimationParams& params) {
  if (histories.empty()) throw std::invalid_argument("check_open_ended: no histories");
  OpenEndedReport report;
  report.tolerance = tolerance;
  for (std::size_t e = 0; e < experts.size(); ++e) {
    ExpertSpread spread;
    spread.label = experts.label(e);
    std::vector<double> values;
    std::vector<double> cis;
    for (const History& h : histories) {
      const ValueEstimate v = estimate_value(game, experts.factory(e), phi_factory, h, params);
      values.push_back(v.tail_mean);
      cis.push_back(v.tail_ci);
    }
    spread.argmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    spread.argmax = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    spread.min = values[spread.argmin];
    spread.max = values[spread.argmax];
    spread.ci_min = cis[spread.argmin];
    spread.ci_max = cis[spread.argmax];
    spread.mu_hat = sample_mean(values);
    if (spread.spread() > tolerance + spread.ci_min + spread.ci_max && report.pass) {
      report.pass = false;
      report.witness_expert = e;
      report.witness = histories[spread.argmin];
    }
    report.experts.push_back(spread);
    report.values.push_back(std::move(values));
  }
  return report;
}

FlexibilityReport check_flexibility(const Game& game, const StrategyFactory& phi_factory,
                                    const ExpertSet& experts, double c, double r,
                                    const std::vector<History>& histories,
                                    const std::vector<std::size_t>& s_grid,
                                    const EstimationParams& params) {
  if (s_grid.empty() || std::find(s_grid.begin(), s_grid.end(), 0) != s_grid.end()) {
    throw std::invalid_argument("check_flexibility: s grid must be positive");
  }
  if (params.trials == 0) throw std::invalid_argument("check_flexibility: trials must be positive");
  FlexibilityReport report;
  report.c = c;
  report.r = r;
  report.low_rate_warning = r <= 0.25;
  report.s_grid = s_grid;
  const std::size_t longest = *std::max_element(s_grid.begin(), s_grid.end());

  for (std::size_t e = 0; e < experts.size(); ++e) {
    const ValueEstimate base = estimate_value(game, experts.factory(e), phi_factory, History{}, params);
    const double mu = base.tail_mean;
    report.mu_hat.push_back(mu);
    std::vector<std::vector<double>> per_history;
    for (std::size_t hi = 0; hi < histories.size(); ++hi) {
      const History& h = histories[hi];
      h.validate(game);
      std::vector<std::vector<double>> dev(s_grid.size(), std::vector<double>(params.trials));
      parallel_for(params.trials, params.parallelism, [&](std::size_t t) {
        auto alice = experts.factory(e)(derive_trial_seed(params.seed, t, Stream::learner));
        auto bob = phi_factory(derive_trial_seed(params.seed, t, Stream::partner));
        alice->replay(h);
        bob->replay(h);
        std::vector<double> cumulative(longest + 1, 0.0);
        std::size_t k = 0;
        play(game, *alice, *bob, longest, [&](std::size_t, const StageRecord& rec) {
          cumulative[k + 1] = cumulative[k] + rec.payoff;
          ++k;
        });
        for (std::size_t j = 0; j < s_grid.size(); ++j) {
          dev[j][t] = std::abs(cumulative[s_grid[j]] / static_cast<double>(s_grid[j]) - mu);
        }
      });
      std::vector<double> means;
      for (std::size_t j = 0; j < s_grid.size(); ++j) {
        const double m = sample_mean(dev[j]);
        const double ci = ci95(dev[j]) + base.tail_ci;
        const double bound = c * std::pow(static_cast<double>(s_grid[j]), -r);
        if (m > bound + ci) report.violations.push_back({e, hi, s_grid[j], m, bound, ci});
        means.push_back(m);
      }
      per_history.push_back(std::move(means));
    }
    report.deviations.push_back(std::move(per_history));
  }
  return report;
}

std::vector<Action> best_response_set(const Game& game, Action e) {
  const auto row = game.matrix().row(e);
  const double mu = row.maxCoeff();
  std::vector<Action> out;
  for (Action b = 0; b < game.cols(); ++b) {
    if (row(b) >= mu - 1e-12 * (1.0 + std::abs(mu))) out.push_back(b);
  }
  return out;
}

double minimum_regret(const Game& game, Action e) {
  const auto best = best_response_set(game, e);
  const double mu = game.matrix().row(e).maxCoeff();
  double eps = std::numeric_limits<double>::infinity();
  for (Action b = 0; b < game.cols(); ++b) {
    if (std::find(best.begin(), best.end(), b) == best.end()) eps = std::min(eps, mu - game.payoff(e, b));
  }
  return eps;
}

FictitiousPlayCheck check_fictitious_play_convergence(const Game& game, const History& h, Action e,
                                                      std::size_t extra) {
  h.validate(game);
  const auto best = best_response_set(game, e);
  const double eps = minimum_regret(game, e);
  FictitiousPlayCheck out;
  out.bound = std::isinf(eps)
                  ? 1
                  : static_cast<std::size_t>(std::ceil(static_cast<double>(h.size()) / eps)) + 1;
  FictitiousPlay fp(game, 0);
  fp.replay(h);
  out.settled_at = 1;
  for (std::size_t k = 1; k <= out.bound + extra; ++k) {
    const Action b = fp.draw();
    if (std::find(best.begin(), best.end(), b) == best.end()) {
      out.settled_at = k + 1;
      if (k > out.bound) out.ok = false;
    }
    fp.observe({e, b});
  }
  return out;
}

nlohmann::json to_json(const OpenEndedReport& r) {
  nlohmann::json experts = nlohmann::json::array();
  for (const auto& e : r.experts) {
    experts.push_back({{"expert", e.label},
                       {"mu_hat", e.mu_hat},
                       {"min", e.min},
                       {"max", e.max},
                       {"spread", e.spread()},
                       {"ci_min", e.ci_min},
                       {"ci_max", e.ci_max}});
  }
  nlohmann::json j = {{"pass", r.pass}, {"tolerance", r.tolerance}, {"experts", experts}};
  if (r.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& s : *r.witness) w.push_back({s.alice, s.bob});
    j["witness"] = {{"expert", *r.witness_expert}, {"history", w}};
  }
  return j;
}

nlohmann::json to_json(const FlexibilityReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"expert", v.expert},
                          {"history", v.history},
                          {"s", v.s},
                          {"deviation", v.deviation},
                          {"bound", v.bound},
                          {"ci", v.ci}});
  }
  return {{"pass", r.pass()},         {"c", r.c},           {"r", r.r},
          {"low_rate_warning", r.low_rate_warning}, {"mu_hat", r.mu_hat}, {"s_grid", r.s_grid},
          {"violations", violations}};
}

}  // namespace repgame
