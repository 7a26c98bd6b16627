#include "repgame/exploiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "repgame/rng.hpp"

namespace repgame {

double interval_delta(double delta, std::size_t i) {
  return std::ldexp(delta, -static_cast<int>(std::min<std::size_t>(i + 1, 2000)));
}

PredictiveExploiter::PredictiveExploiter(StrategyFactory learner_factory, const Game& game,
                                         double delta, OracleParams oracle, std::uint64_t seed)
    : Strategy(seed), factory_(std::move(learner_factory)), n_bob_(game.cols()), delta_(delta),
      oracle_(oracle) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("predictive_exploiter: delta outside (0,1)");
  if (oracle.trials == 0 || oracle.replicas == 0) {
    throw std::invalid_argument("predictive_exploiter: oracle budget must be positive");
  }
  for (std::size_t j = 0; j < oracle_.replicas; ++j) {
    shadows_.push_back(factory_(derive_trial_seed(seed, j, Stream::oracle)));
  }
  log_likelihood_.assign(shadows_.size(), 0.0);
}

PredictiveExploiter::PredictiveExploiter(const PredictiveExploiter& other)
    : Strategy(other), factory_(other.factory_), n_bob_(other.n_bob_), delta_(other.delta_),
      oracle_(other.oracle_), log_likelihood_(other.log_likelihood_),
      interval_(other.interval_), start_(other.start_), sigma_(other.sigma_),
      action_(other.action_), records_(other.records_) {
  for (const auto& s : other.shadows_) shadows_.push_back(s->clone());
}

bool PredictiveExploiter::mirroring() const {
  return interval_ >= 0 && action_ < n_bob_ && observed() - start_ >= sigma_;
}

ActionDistribution PredictiveExploiter::policy() const {
  return mirroring() ? ActionDistribution::point_mass(n_bob_, action_) : ActionDistribution::uniform(n_bob_);
}

double PredictiveExploiter::probability(Action a) const {
  if (mirroring()) return a == action_ ? 1.0 : 0.0;
  return 1.0 / n_bob_;
}

Action PredictiveExploiter::sample(double u) const {
  if (mirroring()) return action_;
  return std::min(static_cast<Action>(u * n_bob_), n_bob_ - 1);
}

void PredictiveExploiter::on_observe(const JointAction& stage) {
  for (std::size_t j = 0; j < shadows_.size(); ++j) {
    log_likelihood_[j] += std::log(shadows_[j]->probability(stage.alice));
    shadows_[j]->observe(stage);
  }
  if (interval_ >= 0 && stage.alice == action_) return;

  ++interval_;
  start_ = observed();
  action_ = stage.alice;
  const auto i = static_cast<std::size_t>(interval_);
  const double delta_i = interval_delta(delta_, i);

  const double best = *std::max_element(log_likelihood_.begin(), log_likelihood_.end());
  std::vector<WeightedLearner> starts;
  for (std::size_t j = 0; j < shadows_.size(); ++j) {
    const double w = std::isfinite(best) ? std::exp(log_likelihood_[j] - best) : 1.0;
    starts.push_back({shadows_[j].get(), w});
  }
  const std::size_t remaining = oracle_.stage_limit > start_ ? oracle_.stage_limit - start_ : 0;
  const std::size_t cap = std::min(oracle_.sigma_cap, remaining);
  const std::uint64_t seed = derive_trial_seed(mix64(this->seed() ^ oracle_.seed), i, Stream::oracle);
  const DeviationForecast f =
      forecast_deviation(starts, action_, n_bob_, delta_i, oracle_.trials, cap, seed);
  sigma_ = f.sigma;
  records_.push_back({i, start_, f.sigma, delta_i, f.capped, action_});
}

void PredictiveExploiter::on_reset() {
  for (auto& s : shadows_) s->reset();
  std::fill(log_likelihood_.begin(), log_likelihood_.end(), 0.0);
  interval_ = -1;
  start_ = 0;
  sigma_ = 0;
  action_ = 0;
  records_.clear();
}

bool delta_budget_respected(const std::vector<IntervalRecord>& log, double delta) {
  using boost::multiprecision::cpp_rational;
  const cpp_rational budget(delta);
  cpp_rational total = 0;
  for (const auto& r : log) {
    const cpp_rational expected = budget / cpp_rational(pow(boost::multiprecision::cpp_int(2), static_cast<unsigned>(r.interval + 1)));
    if (cpp_rational(r.delta_i) != expected) return false;
    total += expected;
  }
  return total <= budget;
}

void write_audit_jsonl(std::ostream& out, const std::vector<IntervalRecord>& log) {
  for (const auto& r : log) {
    nlohmann::json j = {{"interval", r.interval}, {"s_i", r.start},      {"sigma_i", r.sigma},
                        {"delta_i", r.delta_i},   {"capped", r.capped}, {"action", r.action}};
    out << j.dump() << '\n';
  }
}

std::unique_ptr<Strategy> predictive_exploiter(StrategyFactory learner_factory, const Game& game,
                                               double delta, OracleParams oracle,
                                               std::uint64_t seed) {
  return std::make_unique<PredictiveExploiter>(std::move(learner_factory), game, delta, oracle, seed);
}

}  // namespace repgame
