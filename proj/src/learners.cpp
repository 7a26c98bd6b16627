#include "repgame/learners.hpp"

#include <cmath>
#include <stdexcept>

namespace repgame {

ExpertSet ExpertSet::fixed_actions(int n) {
  std::vector<Action> actions(static_cast<std::size_t>(std::max(n, 0)));
  for (int a = 0; a < n; ++a) actions[static_cast<std::size_t>(a)] = a;
  return fixed_actions(std::move(actions), n);
}

ExpertSet ExpertSet::fixed_actions(std::vector<Action> actions, int n) {
  if (actions.empty()) throw std::invalid_argument("expert set: empty");
  ExpertSet set;
  set.num_actions_ = n;
  for (Action a : actions) {
    if (a < 0 || a >= n) throw std::invalid_argument("expert set: action out of range");
    set.factories_.push_back([a, n](std::uint64_t seed) { return fixed_expert(a, n, seed); });
    set.labels_.push_back("fixed(" + std::to_string(a) + ")");
  }
  set.actions_ = std::move(actions);
  return set;
}

ExpertSet ExpertSet::custom(std::vector<StrategyFactory> factories, std::vector<std::string> labels) {
  if (factories.empty()) throw std::invalid_argument("expert set: empty");
  if (labels.size() != factories.size()) throw std::invalid_argument("expert set: one label per expert");
  ExpertSet set;
  set.factories_ = std::move(factories);
  set.labels_ = std::move(labels);
  set.num_actions_ = set.factories_.front()(0)->num_actions();
  return set;
}

const std::vector<Action>& ExpertSet::actions() const {
  if (actions_.empty()) throw std::logic_error("expert set: not a fixed-action set");
  return actions_;
}

FixedAction::FixedAction(Action e, int n, std::uint64_t seed) : Strategy(seed), e_(e), n_(n) {
  if (e < 0 || e >= n) throw std::invalid_argument("fixed_expert: action out of range");
}

namespace {

const std::vector<Action>& learner_actions(const Game& game, const ExpertSet& experts) {
  if (experts.empty()) throw std::invalid_argument("learner: empty expert set");
  const auto& actions = experts.actions();
  for (Action a : actions) {
    if (a >= game.rows()) throw std::invalid_argument("learner: expert action outside the game");
  }
  return actions;
}

}  // namespace

ExploreThenCommit::ExploreThenCommit(const Game& game, const ExpertSet& experts,
                                     std::size_t exploration, EvalScheme scheme,
                                     std::uint64_t seed)
    : Strategy(seed), payoff_(game.matrix()), actions_(learner_actions(game, experts)),
      block_(exploration / std::max<std::size_t>(experts.size(), 1)), scheme_(scheme),
      sums_(actions_.size(), 0.0), counts_(actions_.size(), 0) {
  if (exploration < actions_.size()) {
    throw std::invalid_argument("explore_then_commit: need T >= |E|");
  }
}

std::string ExploreThenCommit::label() const {
  return "explore_then_commit(T=" + std::to_string(exploration_length()) + ")";
}

std::size_t ExploreThenCommit::scheduled(std::size_t n) const {
  return scheme_ == EvalScheme::blocks ? n / block_ : n % actions_.size();
}

Action ExploreThenCommit::current() const {
  if (committed_ >= 0) return actions_[static_cast<std::size_t>(committed_)];
  return actions_[scheduled(observed())];
}

ActionDistribution ExploreThenCommit::policy() const {
  return ActionDistribution::point_mass(num_actions(), current());
}

void ExploreThenCommit::on_observe(const JointAction& stage) {
  const std::size_t n = observed();
  const std::size_t explore = exploration_length();
  if (n >= explore) return;
  std::size_t k = scheduled(n);
  if (actions_[k] != stage.alice) {
    k = actions_.size();
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      if (actions_[i] == stage.alice) {
        k = i;
        break;
      }
    }
  }
  if (k < actions_.size()) {
    sums_[k] += payoff_(stage.alice, stage.bob);
    ++counts_[k];
  }
  if (n + 1 == explore) {
    int best = 0;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      if (counts_[i] == 0) continue;
      const double mean = sums_[i] / static_cast<double>(counts_[i]);
      if (mean > best_mean) {
        best_mean = mean;
        best = static_cast<int>(i);
      }
    }
    committed_ = best;
  }
}

void ExploreThenCommit::on_reset() {
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(counts_.begin(), counts_.end(), 0);
  committed_ = -1;
}

double EpsilonSchedule::at(std::size_t k) const {
  if (kind == Kind::constant) return epsilon;
  return epsilon / std::sqrt(static_cast<double>(std::max<std::size_t>(k, 1)));
}

std::size_t HorizonRule::at(std::size_t m) const {
  const double h = std::ceil(scale * std::pow(static_cast<double>(m), power) - 1e-9);
  return h < 1.0 ? 1 : static_cast<std::size_t>(h);
}

StrategicExperts::StrategicExperts(const Game& game, const ExpertSet& experts,
                                   EpsilonSchedule epsilon, HorizonRule horizon,
                                   std::uint64_t seed, bool audit)
    : Strategy(seed), payoff_(game.matrix()), actions_(learner_actions(game, experts)),
      epsilon_(epsilon), horizon_(horizon), audit_(audit), sums_(actions_.size(), 0.0),
      counts_(actions_.size(), 0), evaluations_(actions_.size(), 0) {
  if (!(epsilon.epsilon >= 0.0 && epsilon.epsilon <= 1.0)) {
    throw std::invalid_argument("strategic_experts: epsilon outside [0,1]");
  }
  if (!(horizon.scale > 0.0 && horizon.power > 0.0)) {
    throw std::invalid_argument("strategic_experts: horizon rule must grow");
  }
}

std::size_t StrategicExperts::greedy() const {
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (evaluations_[i] == 0) return i;
  }
  std::size_t best = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    const double mean = counts_[i] ? sums_[i] / static_cast<double>(counts_[i]) : 0.0;
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return best;
}

ActionDistribution StrategicExperts::policy() const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(num_actions());
  for (Action a = 0; a < num_actions(); ++a) p(a) = probability(a);
  p /= p.sum();
  return ActionDistribution(std::move(p));
}

double StrategicExperts::probability(Action a) const {
  if (remaining_ > 0) return a == actions_[current_] ? 1.0 : 0.0;
  const double eps = epsilon_.at(phase_ + 1);
  const double k = static_cast<double>(actions_.size());
  const std::size_t g = greedy();
  double p = 0.0;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] == a) p += eps / k + (i == g ? 1.0 - eps : 0.0);
  }
  return p;
}

Action StrategicExperts::sample(double u) const {
  if (remaining_ > 0) return actions_[current_];
  const double eps = epsilon_.at(phase_ + 1);
  const double k = static_cast<double>(actions_.size());
  const std::size_t g = greedy();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    cumulative += eps / k + (i == g ? 1.0 - eps : 0.0);
    if (u < cumulative) return actions_[i];
  }
  return actions_[g];
}

int StrategicExperts::expert_for(Action a, std::size_t preferred) const {
  if (actions_[preferred] == a) return static_cast<int>(preferred);
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] == a) return static_cast<int>(i);
  }
  return -1;
}

void StrategicExperts::open_phase(std::size_t expert, std::size_t start) {
  ++phase_;
  current_ = expert;
  remaining_ = horizon_.at(++evaluations_[expert]);
  if (audit_) ledger_.push_back({phase_, expert, start, 0});
}

void StrategicExperts::on_observe(const JointAction& stage) {
  const std::size_t n = observed();
  if (remaining_ == 0 || actions_[current_] != stage.alice) {
    const int e = expert_for(stage.alice, remaining_ == 0 ? greedy() : current_);
    if (e < 0) {
      if (remaining_ > 0) --remaining_;
      return;
    }
    open_phase(static_cast<std::size_t>(e), n);
  }
  sums_[current_] += payoff_(stage.alice, stage.bob);
  ++counts_[current_];
  --remaining_;
  if (audit_) ++ledger_.back().length;
}

void StrategicExperts::on_reset() {
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(evaluations_.begin(), evaluations_.end(), 0);
  phase_ = 0;
  current_ = 0;
  remaining_ = 0;
  ledger_.clear();
}

PeriodicSwitcher::PeriodicSwitcher(std::size_t period, int n, std::uint64_t seed)
    : Strategy(seed), period_(period), n_(n) {
  if (period == 0 || n < 1) throw std::invalid_argument("periodic switcher: bad parameters");
}

RandomSwitcher::RandomSwitcher(double p, int n, std::uint64_t seed) : Strategy(seed), p_(p), n_(n) {
  if (!(p >= 0.0 && p <= 1.0) || n < 2) throw std::invalid_argument("random switcher: bad parameters");
}

std::string RandomSwitcher::label() const { return "random_switcher(" + std::to_string(p_) + ")"; }

double RandomSwitcher::probability(Action a) const {
  if (last_ < 0) return a == 0 ? 1.0 : 0.0;
  return a == last_ ? 1.0 - p_ : p_ / (n_ - 1);
}

ActionDistribution RandomSwitcher::policy() const {
  Eigen::VectorXd p(n_);
  for (Action a = 0; a < n_; ++a) p(a) = probability(a);
  return ActionDistribution(std::move(p));
}

Action RandomSwitcher::sample(double u) const {
  if (last_ < 0) return 0;
  if (u >= p_) return last_;
  const int k = std::min(static_cast<int>(u / p_ * (n_ - 1)), n_ - 2);
  return k < last_ ? k : k + 1;
}

std::unique_ptr<Strategy> fixed_expert(Action e, int n, std::uint64_t seed) {
  return std::make_unique<FixedAction>(e, n, seed);
}

std::unique_ptr<Strategy> explore_then_commit(const Game& game, const ExpertSet& experts,
                                              std::size_t exploration, std::uint64_t seed,
                                              EvalScheme scheme) {
  return std::make_unique<ExploreThenCommit>(game, experts, exploration, scheme, seed);
}

std::unique_ptr<Strategy> strategic_experts(const Game& game, const ExpertSet& experts,
                                            EpsilonSchedule epsilon, HorizonRule horizon,
                                            std::uint64_t seed, bool audit) {
  return std::make_unique<StrategicExperts>(game, experts, epsilon, horizon, seed, audit);
}

std::unique_ptr<Strategy> mixed_learner(std::unique_ptr<Strategy> passive,
                                        std::unique_ptr<Strategy> active, double p,
                                        std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixed_learner: p outside [0,1]");
  std::vector<std::unique_ptr<Strategy>> parts;
  parts.push_back(std::move(passive));
  parts.push_back(std::move(active));
  return std::make_unique<MixtureStrategy>(std::move(parts), std::vector<double>{1.0 - p, p}, seed,
                                           "mixed(p=" + std::to_string(p) + ")");
}

std::unique_ptr<Strategy> coin_commit(Action a1, Action a2, int n, std::uint64_t seed) {
  std::vector<std::unique_ptr<Strategy>> parts;
  parts.push_back(fixed_expert(a1, n, seed));
  parts.push_back(fixed_expert(a2, n, seed));
  return std::make_unique<MixtureStrategy>(std::move(parts), std::vector<double>{0.5, 0.5}, seed,
                                           "coin_commit");
}

}  // namespace repgame
