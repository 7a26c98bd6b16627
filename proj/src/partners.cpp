#include "repgame/partners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace repgame {

UniformPartner::UniformPartner(int n, std::uint64_t seed) : Strategy(seed), n_(n) {
  if (n < 1) throw std::invalid_argument("uniform_partner: N must be >= 1");
}

std::string UniformPartner::label() const { return "uniform(" + std::to_string(n_) + ")"; }

Action UniformPartner::sample(double u) const {
  return std::min(static_cast<Action>(u * n_), n_ - 1);
}

StationaryPartner::StationaryPartner(ActionDistribution dist, std::uint64_t seed)
    : Strategy(seed), dist_(std::move(dist)) {}

GrimTrigger::GrimTrigger(GrimTriggerSpec spec, int n_bob, std::uint64_t seed)
    : Strategy(seed), spec_(spec), n_(n_bob) {
  if (spec.cooperate_action < 0 || spec.cooperate_action >= n_bob || spec.punish_action < 0 ||
      spec.punish_action >= n_bob || spec.expected_alice_action < 0) {
    throw std::invalid_argument("grim_trigger: action index out of range");
  }
}

std::string GrimTrigger::label() const {
  return "grim_trigger(" + std::to_string(spec_.expected_alice_action) + "," +
         std::to_string(spec_.cooperate_action) + "," + std::to_string(spec_.punish_action) + ")";
}

void GrimTrigger::on_observe(const JointAction& stage) {
  if (stage.alice != spec_.expected_alice_action) triggered_ = true;
}

GrimTriggerSpec example1_trigger(int which) {
  switch (which) {
    case 1: return {0, 0, 2};
    case 2: return {1, 1, 2};
    default: throw std::invalid_argument("example1_trigger: expected 1 or 2");
  }
}

SwitchingPartner::SwitchingPartner(SwitchingSpec spec, std::uint64_t seed)
    : Strategy(seed), spec_(spec) {
  if (spec.n < 1 || spec.target < 0 || spec.target >= spec.n) {
    throw std::invalid_argument("switching_partner: target outside [0,N)");
  }
  if (spec.fallback && (*spec.fallback < 0 || *spec.fallback >= spec.n)) {
    throw std::invalid_argument("switching_partner: fallback outside [0,N)");
  }
}

std::string SwitchingPartner::label() const {
  const std::string tau = spec_.tau == SwitchingSpec::kNever ? "inf" : std::to_string(spec_.tau);
  return "switching(tau=" + tau + ",e=" + std::to_string(spec_.target) + ")";
}

bool SwitchingPartner::mirroring() const {
  return spec_.tau != SwitchingSpec::kNever && observed() >= spec_.tau && last_alice_ &&
         *last_alice_ == spec_.target;
}

ActionDistribution SwitchingPartner::policy() const {
  if (mirroring()) return ActionDistribution::point_mass(spec_.n, spec_.target);
  if (spec_.fallback) return ActionDistribution::point_mass(spec_.n, *spec_.fallback);
  return ActionDistribution::uniform(spec_.n);
}

double SwitchingPartner::probability(Action a) const {
  if (mirroring()) return a == spec_.target ? 1.0 : 0.0;
  if (spec_.fallback) return a == *spec_.fallback ? 1.0 : 0.0;
  return 1.0 / spec_.n;
}

Action SwitchingPartner::sample(double u) const {
  if (mirroring()) return spec_.target;
  if (spec_.fallback) return *spec_.fallback;
  return std::min(static_cast<Action>(u * spec_.n), spec_.n - 1);
}

Action best_response(const PayoffMatrix<double>& payoff, const Eigen::VectorXd& weights) {
  const Eigen::VectorXd value = payoff.transpose() * weights;
  Action best = 0;
  for (Eigen::Index b = 1; b < value.size(); ++b) {
    const double tolerance = 1e-12 * (1.0 + std::abs(value(best)));
    if (value(b) > value(best) + tolerance) best = static_cast<Action>(b);
  }
  return best;
}

FictitiousPlay::FictitiousPlay(const Game& game, std::uint64_t seed)
    : Strategy(seed), payoff_(game.matrix()), counts_(Eigen::VectorXd::Zero(game.rows())) {}

void FictitiousPlay::on_observe(const JointAction& stage) {
  counts_(stage.alice) += 1.0;
  response_ = best_response(payoff_, counts_);
}

void FictitiousPlay::on_reset() {
  counts_.setZero();
  response_ = 0;
}

ReactivePartner::ReactivePartner(std::vector<Action> table, Action initial, int n_bob,
                                 std::uint64_t seed)
    : Strategy(seed), table_(std::move(table)), initial_(initial), n_(n_bob) {
  if (table_.empty()) throw std::invalid_argument("reactive partner: empty table");
  auto out_of_range = [&](Action b) { return b < 0 || b >= n_bob; };
  if (out_of_range(initial) || std::any_of(table_.begin(), table_.end(), out_of_range)) {
    throw std::invalid_argument("reactive partner: response outside Bob's actions");
  }
}

std::string ReactivePartner::label() const {
  std::string s = "reactive(";
  for (std::size_t i = 0; i < table_.size(); ++i) s += (i ? "," : "") + std::to_string(table_[i]);
  return s + ";init=" + std::to_string(initial_) + ")";
}

std::unique_ptr<Strategy> uniform_partner(int n, std::uint64_t seed) {
  return std::make_unique<UniformPartner>(n, seed);
}

std::unique_ptr<Strategy> stationary_partner(ActionDistribution dist, std::uint64_t seed) {
  return std::make_unique<StationaryPartner>(std::move(dist), seed);
}

std::unique_ptr<Strategy> grim_trigger(GrimTriggerSpec spec, int n_bob, std::uint64_t seed) {
  return std::make_unique<GrimTrigger>(spec, n_bob, seed);
}

std::unique_ptr<Strategy> switching_partner(SwitchingSpec spec, std::uint64_t seed) {
  return std::make_unique<SwitchingPartner>(spec, seed);
}

std::unique_ptr<Strategy> fictitious_play_partner(const Game& game, std::uint64_t seed) {
  return std::make_unique<FictitiousPlay>(game, seed);
}

std::unique_ptr<Strategy> mirror_partner(int n_alice, int n_bob, Action initial, std::uint64_t seed) {
  if (n_bob < n_alice) throw std::invalid_argument("mirror_partner: Bob needs an action per Alice action");
  std::vector<Action> identity(static_cast<std::size_t>(n_alice));
  for (int a = 0; a < n_alice; ++a) identity[static_cast<std::size_t>(a)] = a;
  return std::make_unique<ReactivePartner>(std::move(identity), initial, n_bob, seed);
}

std::unique_ptr<Strategy> mixture_partner(std::vector<std::unique_ptr<Strategy>> components,
                                          std::vector<double> weights, std::uint64_t seed) {
  return std::make_unique<MixtureStrategy>(std::move(components), std::move(weights), seed);
}

}  // namespace repgame
