#include "repgame/strategy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "repgame/rng.hpp"

namespace repgame {

ActionDistribution::ActionDistribution(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) throw std::invalid_argument("ActionDistribution: empty support");
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_(i) >= 0.0) || !std::isfinite(probs_(i))) {
      throw std::invalid_argument("ActionDistribution: negative or non-finite mass");
    }
  }
  if (std::abs(probs_.sum() - 1.0) > kSumTolerance) {
    throw std::invalid_argument("ActionDistribution: masses do not sum to one");
  }
}

ActionDistribution ActionDistribution::point_mass(int n, Action a) {
  if (n < 1 || a < 0 || a >= n) throw std::invalid_argument("point_mass: action out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p(a) = 1.0;
  return ActionDistribution(std::move(p));
}

ActionDistribution ActionDistribution::uniform(int n) {
  if (n < 1) throw std::invalid_argument("uniform: empty action set");
  return ActionDistribution(Eigen::VectorXd::Constant(n, 1.0 / n));
}

bool ActionDistribution::is_point_mass() const { return (probs_.array() == 1.0).any(); }

Action ActionDistribution::sample(double u) const {
  double cumulative = 0.0;
  Action last_positive = 0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (probs_(i) <= 0.0) continue;
    last_positive = static_cast<Action>(i);
    cumulative += probs_(i);
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

Action Strategy::draw() const { return sample(unit_uniform(seed_, observed_)); }

void Strategy::replay(const History& h) {
  reset();
  for (const auto& stage : h) observe(stage);
}

ActionDistribution Strategy::policy_at(const History& h) {
  replay(h);
  return policy();
}

}  // namespace repgame

namespace repgame {

namespace {
constexpr std::uint64_t kCoinSalt = 0x636f696e666c6970ULL;
}

MixtureStrategy::MixtureStrategy(std::vector<std::unique_ptr<Strategy>> components,
                                 std::vector<double> weights, std::uint64_t seed,
                                 std::string label)
    : Strategy(seed), components_(std::move(components)), weights_(std::move(weights)),
      label_(std::move(label)) {
  if (components_.empty() || components_.size() != weights_.size()) {
    throw std::invalid_argument("MixtureStrategy: need one weight per component");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("MixtureStrategy: weight outside [0,1]");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("MixtureStrategy: weights must sum to 1");
  const int n = components_.front()->num_actions();
  for (const auto& c : components_) {
    if (c->num_actions() != n) throw std::invalid_argument("MixtureStrategy: action counts differ");
  }

  const double u = unit_uniform(mix64(seed ^ kCoinSalt), 0);
  double cumulative = 0.0;
  chosen_ = components_.size() - 1;
  while (chosen_ > 0 && weights_[chosen_] == 0.0) --chosen_;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    cumulative += weights_[i];
    if (weights_[i] > 0.0 && u < cumulative) {
      chosen_ = i;
      break;
    }
  }
  if (label_.empty()) {
    label_ = "mixture(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
      label_ += (i ? "," : "") + components_[i]->label();
    }
    label_ += ")";
  }
  components_[chosen_]->reset();
}

MixtureStrategy::MixtureStrategy(const MixtureStrategy& other)
    : Strategy(other), weights_(other.weights_), chosen_(other.chosen_), label_(other.label_) {
  components_.reserve(other.components_.size());
  for (const auto& c : other.components_) components_.push_back(c->clone());
}

std::unique_ptr<Strategy> MixtureStrategy::clone() const {
  return std::make_unique<MixtureStrategy>(*this);
}

}  // namespace repgame
