#include <gtest/gtest.h>

#include <set>

#include "repgame/parallel.hpp"
#include "repgame/rng.hpp"

using namespace repgame;

TEST(Rng, Mix64IsDeterministicAndSpreadsNeighbors) {
  EXPECT_EQ(mix64(1), mix64(1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t x = 0; x < 1000; ++x) seen.insert(mix64(x));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Rng, DerivedSeedsDifferAcrossTrialsAndStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 200; ++t) {
    for (Stream s : {Stream::learner, Stream::partner, Stream::oracle, Stream::sampler, Stream::estimate}) {
      seen.insert(derive_trial_seed(42, t, s));
    }
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_trial_seed(1, 0, Stream::learner), derive_trial_seed(2, 0, Stream::learner));
}

TEST(Rng, UnitUniformStaysInRangeWithMeanNearHalf) {
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = unit_uniform(7, static_cast<std::uint64_t>(i));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Standard error of the mean is 1/sqrt(12 n) ~ 0.0009.
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(Parallel, ResultsDoNotDependOnWorkerCount) {
  auto run = [](unsigned workers) {
    std::vector<double> out(500);
    parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = unit_uniform(derive_trial_seed(3, i, Stream::learner), 0); });
    return out;
  };
  EXPECT_EQ(run(1), run(8));
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
