#include "repgame/harness/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "repgame/adversary.hpp"
#include "repgame/bounds.hpp"
#include "repgame/checks.hpp"
#include "repgame/estimation.hpp"
#include "repgame/exploiter.hpp"
#include "repgame/harness/scenario.hpp"
#include "repgame/learners.hpp"
#include "repgame/machine.hpp"
#include "repgame/partners.hpp"
#include "repgame/rng.hpp"

namespace repgame::harness {

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024;
constexpr double kMargin = 3.0;

struct Budget {
  std::size_t trials;
  std::size_t horizon;
};

constexpr Budget kExample1{2000, 10000};
constexpr Budget kCross{200, 2048};
constexpr Budget kTheorem2{2000, 10000};
constexpr Budget kTheorem2Check{200, 2000};
constexpr Budget kTheorem3{2000, 10000};
constexpr std::size_t kTheorem3Audit = 50;
constexpr Budget kTheorem1{2000, 10000};
constexpr Budget kTheorem1Commit{2000, 10000};
constexpr Budget kCorollary{1000, 2000};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

void expect(SuiteResult& r, bool ok, const std::string& what) {
  r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  r.pass = r.pass && ok;
}

EstimationParams params(Budget b, std::uint64_t seed, const SuiteOptions& o) {
  EstimationParams p;
  p.trials = b.trials;
  p.horizon = b.horizon;
  p.seed = seed;
  p.parallelism = o.parallelism;
  return p;
}

StrategyFactory fixed(Action a, int n) {
  return [a, n](std::uint64_t s) { return fixed_expert(a, n, s); };
}

StrategyFactory trigger(int which) {
  return [which](std::uint64_t s) { return grim_trigger(example1_trigger(which), 3, s); };
}

SuiteResult example1(const SuiteOptions& o) {
  SuiteResult r{"example1", 1, true, {}, {}};
  const Game g = example1_game();
  EstimationParams det = params({2, kExample1.horizon}, kSeed, o);
  const double v11 = estimate_value(g, fixed(0, 2), trigger(1), History{}, det).mean;
  const double v22 = estimate_value(g, fixed(1, 2), trigger(2), History{}, det).mean;
  expect(r, v11 == 2.0, "Monte Carlo V(a1, phi1) = " + num(v11) + " == 2");
  expect(r, v22 == 2.0, "Monte Carlo V(a2, phi2) = " + num(v22) + " == 2");
  const Rational e11 = exact_value(g, fsm_fixed(0, 3), fsm_grim_trigger(example1_trigger(1), 2));
  const Rational e22 = exact_value(g, fsm_fixed(1, 3), fsm_grim_trigger(example1_trigger(2), 2));
  expect(r, e11 == 2, "exact V(a1, phi1) = " + to_fraction_string(e11) + " == 2");
  expect(r, e22 == 2, "exact V(a2, phi2) = " + to_fraction_string(e22) + " == 2");

  const StrategyFactory learner = [](std::uint64_t s) { return coin_commit(0, 1, 2, s); };
  const StrategyFactory mixture = [](std::uint64_t s) {
    std::vector<std::unique_ptr<Strategy>> parts;
    parts.push_back(trigger(1)(derive_trial_seed(s, 0, Stream::partner)));
    parts.push_back(trigger(2)(derive_trial_seed(s, 1, Stream::partner)));
    return mixture_partner(std::move(parts), {0.5, 0.5}, s);
  };
  const EstimationParams est = params(kExample1, kSeed, o);
  const ValueEstimate pooled = estimate_value(g, learner, mixture, History{}, est);
  expect(r, std::abs(pooled.mean - 1.5) <= kMargin * pooled.ci_half_width,
         "coin-commit vs equal mixture: " + num(pooled.mean) + " +- " + num(pooled.ci_half_width) + " vs 3/2");
  const TypedRegret regret =
      type_conditional_regret(g, learner, {trigger(1), trigger(2)}, {0.5, 0.5}, ExpertSet::fixed_actions(2), est);
  expect(r, std::abs(regret.value - 0.5) <= kMargin * regret.ci,
         "adaptive regret " + num(regret.value) + " +- " + num(regret.ci) + " vs 1/2");
  r.data = {{"learner_value", pooled.mean}, {"learner_ci", pooled.ci_half_width},
            {"regret", regret.value},      {"regret_ci", regret.ci}};
  return r;
}

SuiteResult prop1_witness(const SuiteOptions& o) {
  SuiteResult r{"prop1-witness", 2, true, {}, {}};
  const Game g = example1_game();
  const double c = 2.0;
  const double rate = 0.5;
  const auto n = static_cast<std::size_t>(2.0 * std::pow(2.0 * c, 1.0 / rate));
  const std::size_t window = n / 2;
  expect(r, n == 32 && window == 16, "n = " + std::to_string(n) + ", window = " + std::to_string(window));

  const History h = repeated(History{}, {0, 0}, n);
  FictitiousPlay fp(g, kSeed);
  fp.replay(h);
  double total = 0.0;
  std::size_t switch_after = 0;
  for (std::size_t k = 0; switch_after == 0 && k < 4 * n; ++k) {
    const Action b = fp.draw();
    if (k < window) total += g.payoff(1, b);
    if (b == 1) switch_after = k;
    fp.observe({1, b});
  }
  const double average = total / static_cast<double>(window);
  const double bound = c * std::pow(static_cast<double>(window), -rate);
  expect(r, average == 0.0, "average payoff over the window = " + num(average) + " == 0");
  expect(r, bound == 0.5, "flexibility bound c (n/2)^-r = " + num(bound) + " == 0.5");
  expect(r, switch_after == n + 1, "fictitious play answers b2 after " + std::to_string(switch_after) + " stages of a2");

  EstimationParams det = params({1, 1000}, kSeed, o);
  const StrategyFactory fp_factory = [g](std::uint64_t s) { return fictitious_play_partner(g, s); };
  const double mu = estimate_value(g, fixed(1, 2), fp_factory, h, det).tail_mean;
  expect(r, mu == 2.0, "V(a2, fp | h) tail mean = " + num(mu) + " == 2");
  expect(r, std::abs(average - mu) > bound, "|0 - 2| = " + num(std::abs(average - mu)) + " > " + num(bound));

  const FlexibilityReport flex =
      check_flexibility(g, fp_factory, ExpertSet::fixed_actions({1}, 2), c, rate, {h}, {window}, det);
  expect(r, !flex.pass(), "check_flexibility rejects fictitious play on that history");
  r.data = {{"average", average}, {"bound", bound}, {"mu", mu}};
  return r;
}

SuiteResult prop3_fp(const SuiteOptions&) {
  SuiteResult r{"prop3-fp", 3, true, {}, {}};
  std::size_t violations = 0;
  std::size_t longest = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::uint64_t s = derive_trial_seed(kSeed, i, Stream::sampler);
    std::uint64_t counter = 0;
    auto draw = [&](int n) { return std::min(static_cast<int>(unit_uniform(s, counter++) * n), n - 1); };
    const int n = 2 + draw(4);
    PayoffMatrix<double> m(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) m(a, b) = unit_uniform(s, counter++);
    }
    const Game g(m, {0.0, 1.0});
    const auto length = static_cast<std::size_t>(draw(51));
    History h;
    for (std::size_t k = 0; k < length; ++k) h.push_back({draw(n), draw(n)});
    const Action e = draw(n);
    const FictitiousPlayCheck check = check_fictitious_play_convergence(g, h, e);
    if (!check.ok) ++violations;
    longest = std::max(longest, check.bound);
  }
  expect(r, violations == 0, "violations over 200 games: " + std::to_string(violations));
  r.details.push_back("     largest stage bound checked: " + std::to_string(longest));
  r.data = {{"violations", violations}};
  return r;
}

struct ZooEntry {
  std::string name;
  Game game;
  StrategyFactory factory;
};

std::vector<ZooEntry> strategy_zoo() {
  const Game c3 = coordination_game(3);
  const Game e1 = example1_game();
  std::vector<ZooEntry> zoo;
  zoo.push_back({"uniform", c3, [](std::uint64_t s) { return uniform_partner(3, s); }});
  zoo.push_back({"stationary", c3, [](std::uint64_t s) {
                   Eigen::VectorXd p(3);
                   p << 0.5, 0.3, 0.2;
                   return stationary_partner(ActionDistribution(p), s);
                 }});
  zoo.push_back({"switching", c3, [](std::uint64_t s) { return switching_partner({20, 0, 3, std::nullopt}, s); }});
  zoo.push_back({"fictitious_play", c3, [c3](std::uint64_t s) { return fictitious_play_partner(c3, s); }});
  zoo.push_back({"mirror", c3, [](std::uint64_t s) { return mirror_partner(3, 3, 0, s); }});
  zoo.push_back({"reactive", c3, [](std::uint64_t s) {
                   return std::make_unique<ReactivePartner>(std::vector<Action>{1, 2, 0}, 0, 3, s);
                 }});
  zoo.push_back({"grim_trigger", c3, [](std::uint64_t s) { return grim_trigger({0, 0, 1}, 3, s); }});
  zoo.push_back({"phi1", e1, trigger(1)});
  zoo.push_back({"phi2", e1, trigger(2)});
  zoo.push_back({"fictitious_play_example1", e1, [e1](std::uint64_t s) { return fictitious_play_partner(e1, s); }});
  zoo.push_back({"uniform_example1", e1, [](std::uint64_t s) { return uniform_partner(3, s); }});
  return zoo;
}

SuiteResult prop2_cross(const SuiteOptions& o) {
  SuiteResult r{"prop2-cross", 4, true, {}, {}};
  const EstimationParams est = params(kCross, kSeed, o);
  std::size_t counterexamples = 0;
  std::size_t flexible = 0;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& entry : strategy_zoo()) {
    const ExpertSet experts = ExpertSet::fixed_actions(entry.game.rows());
    const auto histories = sample_histories(entry.game, entry.factory, 6, 40, derive_trial_seed(kSeed, 3, Stream::sampler));
    const FlexibilityReport flex = check_flexibility(entry.game, entry.factory, experts, 2.0, 0.5, histories, {16, 64, 256}, est);
    const OpenEndedReport open = check_open_ended(entry.game, entry.factory, experts, histories, 0.05, est);
    if (flex.pass()) ++flexible;
    if (flex.pass() && !open.pass) ++counterexamples;
    r.details.push_back("     " + entry.name + ": flexible=" + (flex.pass() ? "yes" : "no") +
                        " open_ended=" + (open.pass ? "yes" : "no"));
    table.push_back({{"strategy", entry.name}, {"flexible", flex.pass()}, {"open_ended", open.pass}});
  }
  expect(r, flexible > 0, "zoo contains flexible strategies: " + std::to_string(flexible));
  expect(r, counterexamples == 0, "flexible but not open-ended: " + std::to_string(counterexamples));
  r.data = {{"zoo", table}, {"counterexamples", counterexamples}};
  return r;
}

SuiteResult theorem2(const SuiteOptions& o) {
  SuiteResult r{"theorem2", 5, true, {}, {}};
  const Game g = coordination_game(4);
  const ExpertSet experts = ExpertSet::fixed_actions(4);
  const StrategyFactory learner = [g, experts](std::uint64_t s) { return explore_then_commit(g, experts, 300, s); };
  const double delta = 0.05;
  CommitParams cp;
  cp.trials = kTheorem2.trials;
  cp.horizon = kTheorem2.horizon;
  cp.seed = derive_trial_seed(kSeed, 1, Stream::estimate);
  cp.parallelism = o.parallelism;
  const SwitchingPlan plan = construct_switching_adversary(g, learner, delta, cp);
  r.details.push_back("     tau = " + std::to_string(plan.commit.tau) + ", target = " + std::to_string(plan.target) +
                      ", gamma_hat = " + num(plan.commit.gamma_hat));
  const RegretEstimate regret = adaptive_regret(g, learner, plan.factory, experts, params(kTheorem2, kSeed, o));
  expect(r, regret.value + kMargin * regret.ci >= 0.45,
         "adaptive regret " + num(regret.value) + " +- " + num(regret.ci) + " >= 0.45 - 3 CI");

  const auto histories = sample_histories(g, plan.factory, 8, 50, derive_trial_seed(kSeed, 3, Stream::sampler));
  const OpenEndedReport open =
      check_open_ended(g, plan.factory, experts, histories, 0.05, params(kTheorem2Check, kSeed, o));
  expect(r, open.pass, "check_open_ended passes for the switching partner");
  for (std::size_t e = 0; e < open.experts.size(); ++e) {
    const auto& s = open.experts[e];
    const double target = static_cast<Action>(e) == plan.target ? 1.0 : 0.25;
    const double ci = std::max(s.ci_min, s.ci_max);
    expect(r, std::abs(s.mu_hat - target) <= kMargin * ci + 1e-12,
           "mu_hat[" + s.label + "] = " + num(s.mu_hat) + " +- " + num(ci) + " vs " + num(target));
  }
  r.data = {{"regret", regret.value}, {"ci", regret.ci}, {"tau", plan.commit.tau}, {"target", plan.target}};
  return r;
}

SuiteResult theorem3(const SuiteOptions& o) {
  SuiteResult r{"theorem3", 6, true, {}, {}};
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  const StrategyFactory learner = [g, experts](std::uint64_t s) {
    return strategic_experts(g, experts, EpsilonSchedule{}, HorizonRule{}, s);
  };
  const double delta = 0.05;
  OracleParams oracle;
  oracle.stage_limit = kTheorem3.horizon;
  oracle.seed = derive_trial_seed(kSeed, 2, Stream::oracle);
  const StrategyFactory phi = [=](std::uint64_t s) { return predictive_exploiter(learner, g, delta, oracle, s); };
  const EstimationParams est = params(kTheorem3, kSeed, o);
  const RegretEstimate regret = adaptive_regret(g, learner, phi, experts, est);
  const double bound = 2.0 / 3.0 - delta;
  expect(r, regret.learner.mean <= 1.0 / 3.0 + kMargin * regret.learner.ci_half_width,
         "learner mean " + num(regret.learner.mean) + " +- " + num(regret.learner.ci_half_width) + " <= 1/3 + 3 CI");
  expect(r, regret.value + kMargin * regret.ci >= bound,
         "adaptive regret " + num(regret.value) + " +- " + num(regret.ci) + " >= 2/3 - 0.05 - 3 CI");

  bool budget_ok = true;
  std::size_t intervals = 0;
  for (std::size_t t = 0; t < kTheorem3Audit; ++t) {
    auto pi = learner(derive_trial_seed(kSeed, t, Stream::learner));
    auto bob = phi(derive_trial_seed(kSeed, t, Stream::partner));
    play(g, *pi, *bob, kTheorem3.horizon, [](std::size_t, const StageRecord&) {});
    const auto& log = dynamic_cast<const PredictiveExploiter&>(*bob).audit_log();
    intervals += log.size();
    budget_ok = budget_ok && delta_budget_respected(log, delta);
  }
  expect(r, budget_ok, "sum of delta_i <= delta exactly over " + std::to_string(kTheorem3Audit) +
                           " audited runs (" + std::to_string(intervals) + " intervals)");
  r.data = {{"regret", regret.value}, {"ci", regret.ci}, {"learner", regret.learner.mean}};
  return r;
}

SuiteResult theorem1(const SuiteOptions& o) {
  SuiteResult r{"theorem1", 7, true, {}, {}};
  const Game g = coordination_game(5);
  const ExpertSet experts = ExpertSet::fixed_actions(5);
  const StrategyFactory learner = [g, experts](std::uint64_t s) {
    return mixed_learner(explore_then_commit(g, experts, 300, s),
                         strategic_experts(g, experts, EpsilonSchedule{}, HorizonRule{}, s), 0.5, s);
  };
  const double delta = 0.1;
  CommitParams cp;
  cp.trials = kTheorem1Commit.trials;
  cp.horizon = kTheorem1Commit.horizon;
  cp.seed = derive_trial_seed(kSeed, 1, Stream::estimate);
  cp.parallelism = o.parallelism;
  OracleParams oracle;
  oracle.stage_limit = kTheorem1.horizon;
  oracle.seed = derive_trial_seed(kSeed, 2, Stream::oracle);
  const AdversaryPlan plan = theorem1_adversary(g, learner, delta, cp, oracle);
  r.details.push_back("     branch = " + to_string(plan.branch) + ", gamma_hat = " + num(plan.commit.gamma_hat) +
                      ", passive term = " + num(plan.passive_term) + ", active term = " + num(plan.active_term));
  const RegretEstimate regret = adaptive_regret(g, learner, plan.factory, experts, params(kTheorem1, kSeed, o));
  const double bound = to_double(bound_table(5, Rational(1, 10)).theorem1_bound);
  expect(r, regret.value + kMargin * regret.ci >= bound,
         "adaptive regret " + num(regret.value) + " +- " + num(regret.ci) + " >= " + num(bound) + " - 3 CI");
  r.data = {{"regret", regret.value}, {"ci", regret.ci}, {"plan", to_json(plan)}};
  return r;
}

SuiteResult corollary1(const SuiteOptions& o) {
  SuiteResult r{"corollary1", 8, true, {}, {}};
  const Game g = coordination_game(3);
  const ExpertSet experts = ExpertSet::fixed_actions(3);
  const StrategyFactory learner = [g, experts](std::uint64_t s) { return explore_then_commit(g, experts, 30, s); };
  const StrategyFactory phi = [](std::uint64_t s) { return switching_partner({20, 0, 3, std::nullopt}, s); };
  const EstimationParams est = params(kCorollary, kSeed, o);
  const RegretEstimate adaptive = adaptive_regret(g, learner, phi, experts, est);
  const OpenEndedRegret open = open_ended_regret(g, learner, phi, experts.actions(), 2, est);
  expect(r, std::abs(open.value - adaptive.value) <= open.ci + adaptive.ci,
         "switching partner: open-ended " + num(open.value) + " +- " + num(open.ci) + " vs adaptive " +
             num(adaptive.value) + " +- " + num(adaptive.ci));

  const Game e1 = example1_game();
  const OpenEndedRegret grim = open_ended_regret(e1, fixed(0, 2), trigger(1), {0, 1}, 1, params({2, 1000}, kSeed, o));
  expect(r, grim.value == -1.0, "fixed a1 vs phi1 at depth 1: open-ended regret = " + num(grim.value) + " == -1");
  r.data = {{"open_ended", open.value}, {"adaptive", adaptive.value}, {"grim", grim.value}};
  return r;
}

SuiteResult machine(const SuiteOptions&) {
  SuiteResult r{"machine", 9, true, {}, {}};
  const Game g = example1_game();
  const int expected[2][2] = {{2, 1}, {1, 2}};
  for (int e = 0; e < 2; ++e) {
    for (int w = 1; w <= 2; ++w) {
      const Fsm alice = fsm_fixed(e, 3);
      const Fsm bob = fsm_grim_trigger(example1_trigger(w), 2);
      const Rational v = exact_value(g, alice, bob);
      const double approx = cycle_average(g.matrix(), alice, bob).value;
      const int want = expected[e][w - 1];
      expect(r, v == want && approx == want,
             "V(a" + std::to_string(e + 1) + ", phi" + std::to_string(w) + ") = " + to_fraction_string(v) +
                 " == " + std::to_string(want));
    }
  }
  std::vector<Fsm> candidates = all_one_state_machines(3, 2);
  for (auto& m : all_machines(2, 3, 2)) candidates.push_back(std::move(m));

  const Belief sure({{fsm_fixed(0, 3), Rational(1)}});
  const RationalityVerdict grim =
      is_computationally_rational(g, fsm_grim_trigger(example1_trigger(1), 2), sure, candidates);
  const bool witness_ok = grim.witness && candidates[*grim.witness].pruned().states == 1 &&
                          candidates[*grim.witness].output[static_cast<std::size_t>(candidates[*grim.witness].initial)] == 0;
  expect(r, !grim.pass, "grim trigger phi1 is not rational under rho(a1) = 1");
  expect(r, witness_ok, "witness is the always-b1 machine");

  const Belief even({{fsm_fixed(0, 3), Rational(1, 2)}, {fsm_fixed(1, 3), Rational(1, 2)}});
  const RationalityVerdict mirror = is_computationally_rational(g, fsm_mirror(2, 0), even, candidates);
  expect(r, mirror.pass, "mirror machine is rational under the 50/50 belief (value " +
                             to_fraction_string(mirror.value) + ", " + std::to_string(candidates.size()) +
                             " candidates)");
  r.data = {{"grim", to_json(grim)}, {"mirror_value", to_fraction_string(mirror.value)}};
  return r;
}

std::string serialize(const RunReport& report) {
  std::string out = report.to_json().dump(2) + report.to_csv();
  for (const auto& [name, content] : report.artifacts) out += name + "\n" + content;
  return out;
}

constexpr const char* kReproScenario = R"(
[scenario]
name = reproducibility
metric = adaptive_regret
seed = 7

[game]
kind = coordination
n = 4

[learner]
kind = explore_then_commit
exploration = 40

[partner]
kind = switching_adversary
delta = 0.05

[estimation]
trials = 64
horizon = 400
commit_trials = 64
)";

constexpr const char* kExploitScenario = R"(
[scenario]
name = exploit-reproducibility
metric = exploit
seed = 11

[game]
kind = coordination
n = 3

[learner]
kind = strategic_experts

[partner]
kind = exploiter
delta = 0.05
oracle_trials = 16
oracle_replicas = 4

[estimation]
trials = 24
horizon = 300

[output]
audit_trials = 3
)";

SuiteResult infrastructure(const SuiteOptions&) {
  SuiteResult r{"infrastructure", 10, true, {}, {}};
  const BoundTable t = bound_table(5, Rational(1, 10));
  expect(r, t.gamma_star == Rational(1, 3), "gamma_star(5, 0.1) = " + to_fraction_string(t.gamma_star) + " == 1/3");
  expect(r, t.theorem1_bound == Rational(1, 8),
         "theorem1_bound(5, 0.1) = " + to_fraction_string(t.theorem1_bound) + " == 1/8");

  for (const char* text : {kReproScenario, kExploitScenario}) {
    const Config c = Config::parse(text);
    const std::string name = c.get("scenario", "name");
    const std::string first = serialize(run_scenario(c, {std::nullopt, 1u, std::nullopt}));
    const std::string second = serialize(run_scenario(c, {std::nullopt, 1u, std::nullopt}));
    const std::string parallel = serialize(run_scenario(c, {std::nullopt, 8u, std::nullopt}));
    expect(r, first == second, name + ": two seeded runs are byte-identical");
    expect(r, first == parallel, name + ": parallelism 1 and 8 are byte-identical");
  }

  Config grid = Config::parse(kReproScenario);
  grid.set("sweep", "game.n", "3, 4");
  grid.set("sweep", "partner.delta", "0.05, 0.1");
  const SweepResult one = sweep(grid, {std::nullopt, 1u, std::nullopt});
  const SweepResult eight = sweep(grid, {std::nullopt, 8u, std::nullopt});
  expect(r, one.points.size() == 4 && one.to_csv() == eight.to_csv(),
         "sweep over 4 points matches across parallelism 1 and 8");
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"example1", example1},     {"prop1-witness", prop1_witness}, {"prop3-fp", prop3_fp},
      {"prop2-cross", prop2_cross}, {"theorem2", theorem2},         {"theorem3", theorem3},
      {"theorem1", theorem1},     {"corollary1", corollary1},       {"machine", machine},
      {"infrastructure", infrastructure}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(options);
  }
  throw std::out_of_range("unknown suite '" + name + "'");
}

std::vector<SuiteResult> verify(const std::string& name, const SuiteOptions& options) {
  std::vector<SuiteResult> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, options));
  } else {
    out.push_back(run_suite(name, options));
  }
  return out;
}

nlohmann::json to_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"criterion", r.criterion}, {"pass", r.pass}, {"details", r.details}, {"data", r.data}};
}

}  // namespace repgame::harness
