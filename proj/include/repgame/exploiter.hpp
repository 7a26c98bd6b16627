#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "repgame/deviation_oracle.hpp"
#include "repgame/game.hpp"
#include "repgame/strategy.hpp"

namespace repgame {

struct IntervalRecord {
  std::size_t interval = 0;
  std::size_t start = 0;
  std::size_t sigma = 0;
  double delta_i = 0.0;
  bool capped = false;
  Action action = 0;
};

/// Bob's predictive exploiter.
///
/// A new interval opens whenever Alice's realized action changes (interval 0
/// at the first stage). At the start of interval i the exploiter forecasts
/// sigma_i with delta_i = delta / 2^(i+1) from shadow copies of the learner,
/// then plays uniformly for sigma_i stages and mirrors the interval's action
/// afterwards. Shadows are weighted by the likelihood they assign to Alice's
/// realized actions, so a mixture learner is conditioned on what was seen.
class PredictiveExploiter final : public Strategy {
 public:
  PredictiveExploiter(StrategyFactory learner_factory, const Game& game, double delta,
                      OracleParams oracle, std::uint64_t seed);
  PredictiveExploiter(const PredictiveExploiter& other);

  int num_actions() const override { return n_bob_; }
  std::string label() const override { return "predictive_exploiter"; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PredictiveExploiter>(*this); }
  ActionDistribution policy() const override;
  double probability(Action a) const override;
  Action sample(double u) const override;

  double delta() const { return delta_; }
  /// Zero-based index of the current interval; -1 before the first stage.
  long interval() const { return interval_; }
  bool mirroring() const;
  /// One record per interval opened so far.
  const std::vector<IntervalRecord>& audit_log() const { return records_; }

 protected:
  void on_observe(const JointAction& stage) override;
  void on_reset() override;

 private:
  StrategyFactory factory_;
  int n_bob_;
  double delta_;
  OracleParams oracle_;

  std::vector<std::unique_ptr<Strategy>> shadows_;
  std::vector<double> log_likelihood_;
  long interval_ = -1;
  std::size_t start_ = 0;
  std::size_t sigma_ = 0;
  Action action_ = 0;
  std::vector<IntervalRecord> records_;
};

/// delta / 2^(i+1), exact in binary floating point.
double interval_delta(double delta, std::size_t i);

/// Checks with exact rational arithmetic that every record carries
/// delta / 2^(i+1) for its own index and that their sum stays <= delta.
bool delta_budget_respected(const std::vector<IntervalRecord>& log, double delta);

/// JSON-lines: {"interval","s_i","sigma_i","delta_i","capped","action"}.
void write_audit_jsonl(std::ostream& out, const std::vector<IntervalRecord>& log);

std::unique_ptr<Strategy> predictive_exploiter(StrategyFactory learner_factory, const Game& game,
                                               double delta, OracleParams oracle,
                                               std::uint64_t seed);

}  // namespace repgame
