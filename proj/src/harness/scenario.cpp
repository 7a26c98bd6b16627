#include "repgame/harness/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "repgame/bounds.hpp"
#include "repgame/checks.hpp"
#include "repgame/exploiter.hpp"
#include "repgame/harness/registry.hpp"
#include "repgame/rng.hpp"
#include "repgame/simulate.hpp"

namespace repgame::harness {

namespace {

bool needs_learner(const std::string& m) {
  return m == "simulate" || m == "value" || m == "adaptive_regret" || m == "external_regret" ||
         m == "open_ended_regret" || m == "commit_time" || m == "exploit";
}

bool needs_partner(const std::string& m) {
  return m != "bounds" && m != "fsm_value" && m != "fsm_rationality";
}

struct Resolved {
  Config config;
  std::string metric;
  std::optional<Game> game;
  std::optional<ExpertSet> experts;
  EstimationParams est;
  StrategyFactory learner;
  std::optional<PartnerRecipe> partner;
};

std::vector<std::size_t> to_sizes(const std::vector<std::string>& tokens, const std::string& where) {
  std::vector<std::size_t> out;
  for (const auto& t : tokens) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("config: " + where + ": '" + t + "' is not a non-negative integer");
    }
  }
  return out;
}

Rational rational_value(const Config& c, const std::string& section, const std::string& key) {
  try {
    return parse_rational(c.get(section, key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("config: [" + section + "] " + key + ": " + e.what());
  }
}

BoundTable make_bounds(const Config& c, const std::optional<Game>& game) {
  int n = 0;
  if (c.has("metric", "n")) {
    n = static_cast<int>(c.require_int("metric", "n"));
  } else if (game) {
    n = game->rows();
  } else {
    throw ConfigError("config: [metric] n is required for bounds");
  }
  const Rational delta = c.has("metric", "delta") ? rational_value(c, "metric", "delta") : Rational(1, 10);
  std::optional<Rational> gamma;
  if (c.has("metric", "gamma")) gamma = rational_value(c, "metric", "gamma");
  try {
    return bound_table(n, delta, gamma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: [metric] ") + e.what());
  }
}

std::vector<std::pair<Fsm, Rational>> make_belief(const Config& c, const Game& game) {
  std::vector<std::pair<Fsm, Rational>> support;
  for (const auto& entry : c.get_list("metric", "belief")) {
    const auto at = entry.rfind('@');
    if (at == std::string::npos) throw ConfigError("config: [metric] belief entry '" + entry + "' needs spec@probability");
    Rational p;
    try {
      p = parse_rational(entry.substr(at + 1));
    } catch (const std::exception& e) {
      throw ConfigError("config: [metric] belief: " + std::string(e.what()));
    }
    support.emplace_back(make_machine(entry.substr(0, at), game, Role::alice), p);
  }
  if (support.empty()) throw ConfigError("config: [metric] belief is required");
  return support;
}

std::vector<Fsm> make_candidates(const Config& c, const Game& game) {
  std::vector<Fsm> out;
  auto specs = c.get_list("metric", "candidates");
  if (specs.empty()) specs = {"one_state"};
  for (const auto& spec : specs) {
    if (spec == "one_state") {
      for (auto& m : all_one_state_machines(game.cols(), game.rows())) out.push_back(std::move(m));
    } else if (spec.starts_with("all:")) {
      const int k = static_cast<int>(to_sizes({spec.substr(4)}, "[metric] candidates").front());
      try {
        for (auto& m : all_machines(k, game.cols(), game.rows(), 100000)) out.push_back(std::move(m));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: [metric] candidates: ") + e.what());
      }
    } else {
      out.push_back(make_machine(spec, game, Role::bob));
    }
  }
  return out;
}

/// Checks the metric-specific keys without running anything.
void check_metric_params(const Resolved& r) {
  const Config& c = r.config;
  const std::string& m = r.metric;
  if (m == "bounds") {
    make_bounds(c, r.game);
  } else if (m == "fsm_value") {
    make_machine(c.get("metric", "alice"), *r.game, Role::alice);
    make_machine(c.get("metric", "bob"), *r.game, Role::bob);
  } else if (m == "fsm_rationality") {
    make_machine(c.get("metric", "bob"), *r.game, Role::bob);
    try {
      Belief(make_belief(c, *r.game));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: [metric] ") + e.what());
    }
    make_candidates(c, *r.game);
  } else if (m == "check_flexibility") {
    const auto grid = to_sizes(c.get_list("metric", "s_grid"), "[metric] s_grid");
    if (std::find(grid.begin(), grid.end(), 0) != grid.end()) throw ConfigError("config: [metric] s_grid must be positive");
  } else if (m == "commit_time") {
    const double delta = c.get_double("metric", "delta", 0.05);
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("config: [metric] delta must lie in (0, 1)");
  } else if (m == "exploit") {
    const std::string& kind = r.partner->kind;
    if (kind != "exploiter" && kind != "theorem1" && kind != "switching_adversary") {
      throw ConfigError("config: exploit needs an adversarial [partner] (exploiter, theorem1, switching_adversary)");
    }
  }
  if (m == "open_ended_regret" || m == "check_open_ended" || m == "check_flexibility" ||
      m == "external_regret") {
    if (!r.experts->is_fixed_action() && m != "check_open_ended" && m != "check_flexibility") {
      throw ConfigError("config: " + m + " needs fixed-action experts");
    }
  }
}

Resolved resolve(Config c, const RunOptions& options) {
  if (options.seed) c.set("scenario", "seed", std::to_string(*options.seed));
  if (options.parallelism) c.set("scenario", "parallelism", std::to_string(*options.parallelism));
  if (options.metric) c.set("scenario", "metric", *options.metric);
  Resolved r;
  r.metric = c.get("scenario", "metric", "adaptive_regret");
  const auto& kinds = metric_kinds();
  if (std::find(kinds.begin(), kinds.end(), r.metric) == kinds.end()) {
    std::string list;
    for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("config: unknown metric '" + r.metric + "'; expected one of: " + list);
  }
  r.est = make_estimation(c);
  if (c.has_section("game") || r.metric != "bounds") r.game = make_game(c);
  if (r.game) r.experts = make_experts(c, *r.game);
  if (needs_learner(r.metric)) r.learner = make_learner(c, "learner", *r.game, *r.experts);
  if (needs_partner(r.metric)) r.partner = make_partner(c, "partner", *r.game, *r.experts, r.learner, r.est);
  r.config = std::move(c);
  check_metric_params(r);
  return r;
}

MetricRow value_row(const std::string& name, double estimate, double ci, const Resolved& r) {
  return {name, estimate, ci, r.est.trials, r.est.horizon, r.est.seed};
}

MetricRow exact_row(const std::string& name, double value, const Resolved& r) {
  return {name, value, 0.0, 0, 0, r.est.seed};
}

void run_simulate(const Resolved& r, RunReport& report, const StrategyFactory& phi) {
  const ValueEstimate v = estimate_value(*r.game, r.learner, phi, History{}, r.est);
  report.results["value"] = to_json(v);
  report.rows.push_back(value_row("value", v.mean, v.ci_half_width, r));
  report.rows.push_back(value_row("tail_value", v.tail_mean, v.tail_ci, r));
  report.rows.push_back(value_row("liminf_proxy", v.liminf_proxy, v.tail_ci, r));
  if (r.metric != "simulate") return;
  const auto count = std::min<std::size_t>(r.config.get_u64("output", "trajectories", 1), r.est.trials);
  if (count == 0) return;
  const auto batch = sample_trajectories(*r.game, r.learner, phi, count, r.est.horizon, r.est.seed, r.est.parallelism);
  std::ostringstream out;
  for (const auto& t : batch) write_jsonl(out, t);
  report.artifacts["trajectories.jsonl"] = out.str();
}

void run_exploit(const Resolved& r, RunReport& report, const StrategyFactory& phi, const nlohmann::json& diag) {
  const RegretEstimate regret = adaptive_regret(*r.game, r.learner, phi, *r.experts, r.est);
  report.results["regret"] = to_json(regret);
  report.rows.push_back(value_row("regret", regret.value, regret.ci, r));
  report.rows.push_back(
      value_row("learner_value", regret.learner.value(r.est.value_kind), regret.learner.ci(r.est.value_kind), r));
  const int n = r.game->rows();
  const double delta = r.config.get_double("partner", "delta", 0.1);
  double bound = 0.0;
  if (r.partner->kind == "exploiter") {
    bound = static_cast<double>(n - 1) / n - delta;
  } else if (r.partner->kind == "switching_adversary") {
    bound = static_cast<double>(n - 2) / n - diag.at("commit").at("gamma_hat").get<double>() - delta;
  } else {
    const bool switching = diag.at("branch").get<std::string>() == "switching";
    bound = diag.at(switching ? "passive_term" : "active_term").get<double>();
    report.rows.push_back(exact_row("theorem1_bound", to_double(bound_table(n, delta).theorem1_bound), r));
  }
  report.rows.push_back(exact_row("bound", bound, r));

  const auto audit_trials = std::min<std::size_t>(r.config.get_u64("output", "audit_trials", 1), r.est.trials);
  std::size_t intervals = 0;
  bool budget_ok = true;
  bool any_exploiter = false;
  std::ostringstream audit;
  for (std::size_t t = 0; t < audit_trials; ++t) {
    auto pi = r.learner(derive_trial_seed(r.est.seed, t, Stream::learner));
    auto bob = phi(derive_trial_seed(r.est.seed, t, Stream::partner));
    play(*r.game, *pi, *bob, r.est.horizon, [](std::size_t, const StageRecord&) {});
    const auto* ex = dynamic_cast<const PredictiveExploiter*>(bob.get());
    if (!ex) continue;
    any_exploiter = true;
    intervals += ex->audit_log().size();
    budget_ok = budget_ok && delta_budget_respected(ex->audit_log(), delta);
    if (audit_trials > 1) audit << nlohmann::json{{"trial", t}}.dump() << '\n';
    write_audit_jsonl(audit, ex->audit_log());
  }
  if (any_exploiter) {
    report.rows.push_back(exact_row("delta_budget_ok", budget_ok ? 1.0 : 0.0, r));
    report.rows.push_back(exact_row("intervals", static_cast<double>(intervals), r));
    if (r.config.get_bool("output", "audit", true)) report.artifacts["audit.jsonl"] = audit.str();
  }
}

RunReport execute(const Resolved& r) {
  RunReport report;
  report.scenario = r.config.get("scenario", "name", "scenario");
  report.metric = r.metric;
  report.seed = r.est.seed;
  report.config = r.config;
  report.config.erase("scenario", "parallelism");
  const Config& c = r.config;
  const std::string& m = r.metric;

  StrategyFactory phi;
  nlohmann::json diag;
  if (r.partner) {
    phi = r.partner->build(diag);
    if (!diag.is_null()) report.results["partner"] = diag;
  }

  if (m == "simulate" || m == "value") {
    run_simulate(r, report, phi);
  } else if (m == "adaptive_regret" && r.partner->kind == "mixture" && c.get_bool("metric", "per_type", true)) {
    const TypedRegret typed =
        type_conditional_regret(*r.game, r.learner, r.partner->types, r.partner->weights, *r.experts, r.est);
    nlohmann::json per = nlohmann::json::array();
    for (const auto& t : typed.per_type) per.push_back(to_json(t));
    const ValueEstimate pooled = estimate_value(*r.game, r.learner, phi, History{}, r.est);
    report.results["regret"] = {{"regret", typed.value},
                                {"ci", typed.ci},
                                {"weights", typed.weights},
                                {"per_type", per},
                                {"learner", to_json(pooled)}};
    report.rows.push_back(value_row("regret", typed.value, typed.ci, r));
    report.rows.push_back(
        value_row("learner_value", pooled.value(r.est.value_kind), pooled.ci(r.est.value_kind), r));
  } else if (m == "adaptive_regret") {
    const RegretEstimate regret = adaptive_regret(*r.game, r.learner, phi, *r.experts, r.est);
    report.results["regret"] = to_json(regret);
    report.rows.push_back(value_row("regret", regret.value, regret.ci, r));
    report.rows.push_back(
        value_row("learner_value", regret.learner.value(r.est.value_kind), regret.learner.ci(r.est.value_kind), r));
    const auto& best = regret.experts[regret.best_expert];
    report.rows.push_back(value_row("best_expert_value", best.value(r.est.value_kind), best.ci(r.est.value_kind), r));
  } else if (m == "external_regret") {
    const ExternalRegret x = external_regret(*r.game, r.learner, phi, r.experts->actions(), r.est);
    report.results["external_regret"] = {{"value", x.value}, {"ci", x.ci}, {"best_action", x.best_action}};
    report.rows.push_back(value_row("external_regret", x.value, x.ci, r));
  } else if (m == "open_ended_regret") {
    const auto depth = static_cast<std::size_t>(c.get_u64("metric", "depth", 1));
    const auto budget = static_cast<std::size_t>(c.get_u64("metric", "prefix_budget", 100000));
    const OpenEndedRegret o = open_ended_regret(*r.game, r.learner, phi, r.experts->actions(), depth, r.est, budget);
    report.results["open_ended_regret"] = {{"value", o.value},
                                           {"ci", o.ci},
                                           {"partial", o.partial},
                                           {"prefixes_evaluated", o.prefixes_evaluated},
                                           {"guaranteed", o.guaranteed},
                                           {"witness", o.witness},
                                           {"learner", to_json(o.learner)}};
    if (o.partial) report.warnings.push_back("prefix budget exhausted; open-ended regret is partial");
    report.rows.push_back(value_row("open_ended_regret", o.value, o.ci, r));
  } else if (m == "check_open_ended" || m == "check_flexibility") {
    const auto histories = sample_histories(*r.game, phi, c.get_u64("metric", "histories", 20),
                                            c.get_u64("metric", "max_length", 50),
                                            derive_trial_seed(r.est.seed, 3, Stream::sampler));
    if (m == "check_open_ended") {
      const OpenEndedReport o =
          check_open_ended(*r.game, phi, *r.experts, histories, c.get_double("metric", "tolerance", 0.05), r.est);
      report.results["check_open_ended"] = to_json(o);
      report.rows.push_back(exact_row("open_ended_pass", o.pass ? 1.0 : 0.0, r));
      for (const auto& e : o.experts) {
        report.rows.push_back(value_row("mu_hat[" + e.label + "]", e.mu_hat, std::max(e.ci_min, e.ci_max), r));
      }
    } else {
      auto grid = to_sizes(c.get_list("metric", "s_grid"), "[metric] s_grid");
      if (grid.empty()) grid = {16, 64, 256};
      const FlexibilityReport f = check_flexibility(*r.game, phi, *r.experts, c.get_double("metric", "c", 2.0),
                                                    c.get_double("metric", "r", 0.5), histories, grid, r.est);
      report.results["check_flexibility"] = to_json(f);
      if (f.low_rate_warning) report.warnings.push_back("rate r <= 1/4 is below the usual flexibility threshold");
      report.rows.push_back(exact_row("flexible_pass", f.pass() ? 1.0 : 0.0, r));
      report.rows.push_back(exact_row("violations", static_cast<double>(f.violations.size()), r));
    }
  } else if (m == "commit_time") {
    const CommitParams cp = make_commit(c, r.est);
    const CommitTime ct = estimate_commit_time(*r.game, r.learner, phi, c.get_double("metric", "delta", 0.05),
                                               cp.trials, cp.horizon, cp.seed, cp.window, cp.parallelism);
    report.results["commit_time"] = to_json(ct);
    report.rows.push_back({"tau", static_cast<double>(ct.tau), 0.0, cp.trials, cp.horizon, cp.seed});
    report.rows.push_back({"gamma_hat", ct.gamma_hat, 0.0, cp.trials, cp.horizon, cp.seed});
    if (ct.degenerate) report.warnings.push_back("gamma_hat + delta >= 1; commit time is degenerate");
  } else if (m == "exploit") {
    run_exploit(r, report, phi, diag);
  } else if (m == "bounds") {
    const BoundTable t = make_bounds(c, r.game);
    report.results["bounds"] = to_json(t);
    report.rows.push_back(exact_row("passive_bound", to_double(t.passive_bound), r));
    report.rows.push_back(exact_row("active_bound", to_double(t.active_bound), r));
    report.rows.push_back(exact_row("gamma_star", to_double(t.gamma_star), r));
    report.rows.push_back(exact_row("mixed_bound", to_double(t.mixed_bound), r));
    report.rows.push_back(exact_row("theorem1_bound", to_double(t.theorem1_bound), r));
    report.artifacts["bounds.csv"] = to_csv(t);
  } else if (m == "fsm_value") {
    const Fsm a = make_machine(c.get("metric", "alice"), *r.game, Role::alice);
    const Fsm b = make_machine(c.get("metric", "bob"), *r.game, Role::bob);
    const auto cycle = exact_cycle(*r.game, a, b);
    report.results["fsm_value"] = {{"exact", to_fraction_string(cycle.value)},
                                   {"value", to_double(cycle.value)},
                                   {"transient", cycle.transient},
                                   {"cycle_length", cycle.cycle_length}};
    report.rows.push_back(exact_row("exact_value", to_double(cycle.value), r));
  } else {
    const Fsm b = make_machine(c.get("metric", "bob"), *r.game, Role::bob);
    const Belief rho(make_belief(c, *r.game));
    const auto candidates = make_candidates(c, *r.game);
    const RationalityVerdict v = is_computationally_rational(*r.game, b, rho, candidates);
    nlohmann::json j = to_json(v);
    if (v.witness) j["witness_machine"] = to_json(candidates[*v.witness]);
    report.results["fsm_rationality"] = j;
    report.rows.push_back(exact_row("rational_pass", v.pass ? 1.0 : 0.0, r));
    report.rows.push_back(exact_row("machine_value", to_double(v.value), r));
  }
  evaluate_thresholds(report, c);
  return report;
}

}  // namespace

Config prepare(Config c, const RunOptions& options) {
  Resolved r = resolve(std::move(c), options);
  if (r.config.has_section("thresholds")) {
    RunReport probe;
    evaluate_thresholds(probe, r.config);
  }
  return r.config;
}

RunReport run_scenario(const Config& config, const RunOptions& options) {
  return execute(resolve(config, options));
}

bool SweepResult::pass() const {
  for (const auto& p : points) {
    if (!p.report || !p.report->pass()) return false;
  }
  return true;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string SweepResult::to_csv() const {
  std::string out;
  for (const auto& a : axes) out += csv_escape(a) + ",";
  out += csv_header() + ",pass,error\n";
  for (const auto& p : points) {
    std::string prefix;
    for (const auto& [axis, value] : p.coordinates) prefix += csv_escape(value) + ",";
    if (!p.report) {
      out += prefix + ",,,,,,0," + csv_escape(p.error) + "\n";
      continue;
    }
    for (const auto& row : p.report->rows) {
      out += prefix + csv_line(row) + "," + (p.report->pass() ? "1" : "0") + ",\n";
    }
  }
  return out;
}

SweepResult sweep(const Config& config, const RunOptions& options) {
  SweepResult result;
  std::vector<std::vector<std::string>> values;
  if (config.has_section("sweep")) {
    for (const auto& [axis, list] : config.sections().at("sweep")) {
      Config::split_path(axis);
      auto v = split_list(list);
      if (v.empty()) throw ConfigError("config: [sweep] " + axis + " has no values");
      result.axes.push_back(axis);
      values.push_back(std::move(v));
    }
  }
  Config base = config;
  for (const auto& axis : result.axes) base.erase("sweep", axis);

  std::vector<std::size_t> index(values.size(), 0);
  while (true) {
    SweepPoint point;
    Config c = base;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto [section, key] = Config::split_path(result.axes[k]);
      c.set(section, key, values[k][index[k]]);
      point.coordinates.emplace_back(result.axes[k], values[k][index[k]]);
    }
    try {
      point.report = run_scenario(c, options);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    result.points.push_back(std::move(point));
    std::size_t k = values.size();
    while (k > 0) {
      --k;
      if (++index[k] < values[k].size()) break;
      index[k] = 0;
      if (k == 0) return result;
    }
    if (values.empty()) return result;
  }
}

void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    char name[32];
    std::snprintf(name, sizeof name, "point_%03zu", i);
    if (p.report) write_report(*p.report, dir / name);
  }
  std::ofstream out(dir / "sweep.csv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / "sweep.csv").string());
  out << result.to_csv();
}

}  // namespace repgame::harness
