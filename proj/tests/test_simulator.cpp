#include "mlpark/simulator.hpp"

#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mlpark/analytic.hpp"

namespace mlpark {
namespace {

LatticeConfig particles(int width, std::uint64_t cap, std::uint64_t seed = 1) {
  LatticeConfig config;
  config.active_width = width;
  config.horizon_particles = cap;
  config.seed = seed;
  return config;
}

LatticeConfig timed(int width, double horizon, std::uint64_t seed = 1) {
  LatticeConfig config;
  config.active_width = width;
  config.horizon_time = horizon;
  config.seed = seed;
  return config;
}

// Finds a trial whose first depositions hit the given columns in order.
std::uint64_t find_trial_with_prefix(const LatticeConfig& config, std::vector<int> prefix) {
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    std::vector<int> seen;
    simulate_trial(config, trial, [&](const Deposition& d) {
      seen.push_back(d.x);
      return seen.size() < prefix.size();
    });
    if (seen == prefix) {
      return trial;
    }
  }
  ADD_FAILURE() << "no trial with the requested prefix";
  return 0;
}

TEST(LatticeConfig, Validation) {
  EXPECT_NO_THROW(timed(3, 10.0).validate());
  EXPECT_NO_THROW(particles(1, 1).validate());
  EXPECT_THROW(timed(4, 10.0).validate(), std::invalid_argument);
  EXPECT_THROW(timed(0, 10.0).validate(), std::invalid_argument);
  EXPECT_THROW(timed(-3, 10.0).validate(), std::invalid_argument);
  EXPECT_THROW(timed(3, -1.0).validate(), std::invalid_argument);
  EXPECT_THROW(particles(3, 0).validate(), std::invalid_argument);

  LatticeConfig both = timed(3, 1.0);
  both.horizon_particles = 5;
  EXPECT_THROW(both.validate(), std::invalid_argument);
  LatticeConfig neither;
  EXPECT_THROW(neither.validate(), std::invalid_argument);
}

TEST(RunTrial, SingleParticleLandsOnGround) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimState state = run_trial(particles(3, 1, seed));
    EXPECT_EQ(state.particles, 1u);
    int occupied_columns = 0;
    for (int x = -1; x <= 1; ++x) {
      if (state.top(x) != 0) {
        ++occupied_columns;
        EXPECT_EQ(state.top(x), 1);
        EXPECT_TRUE(state.occupied(x, 1));
      }
    }
    EXPECT_EQ(occupied_columns, 1);
  }
}

TEST(RunTrial, NeighborsStack) {
  const auto config = particles(3, 2);
  const auto trial = find_trial_with_prefix(config, {0, 1});
  const SimState state = run_trial(config, trial, true);
  EXPECT_EQ(state.top(0), 1);
  EXPECT_EQ(state.top(1), 2);
  EXPECT_EQ(state.top(-1), 0);
}

TEST(RunTrial, DistanceTwoDoesNotInterfere) {
  const auto config = particles(3, 2);
  const auto trial = find_trial_with_prefix(config, {-1, 1});
  const SimState state = run_trial(config, trial, true);
  EXPECT_EQ(state.top(-1), 1);
  EXPECT_EQ(state.top(1), 1);
  EXPECT_EQ(state.top(0), 0);
}

TEST(RunTrial, BorderColumnsSeeGhostNeighbors) {
  // Width 1: the only column is flanked by ghosts, so it stacks 1, 2, 3, ...
  const SimState state = run_trial(particles(1, 25));
  EXPECT_EQ(state.top(0), 25);
  EXPECT_EQ(state.column_heights[0].size(), 25u);
}

TEST(RunTrial, DeterministicInSeedAndTrial) {
  const auto config = timed(7, 40.0, 99);
  const SimState a = run_trial(config, 3, true);
  const SimState b = run_trial(config, 3, true);
  EXPECT_EQ(a.column_top, b.column_top);
  EXPECT_EQ(a.column_heights, b.column_heights);
  EXPECT_EQ(a.clock, b.clock);
  const SimState c = run_trial(config, 4, true);
  EXPECT_NE(a.column_heights, c.column_heights);
}

TEST(RunTrial, ScreeningInvariantsAcrossWidths) {
  for (const int width : {1, 3, 5, 9}) {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      const auto config = timed(width, 30.0, 1234);
      const int half = config.half_width();
      std::vector<int> shadow(static_cast<std::size_t>(width) + 2, 0);
      std::set<std::pair<int, int>> occupied;
      double last_time = 0.0;
      simulate_trial(config, trial, [&](const Deposition& d) {
        const auto i = static_cast<std::size_t>(d.x + half + 1);
        const int expected = 1 + std::max({shadow[i - 1], shadow[i], shadow[i + 1]});
        ASSERT_EQ(d.height, expected);
        ASSERT_EQ(d.neighborhood_max + 1, d.height);
        ASSERT_GT(d.height, shadow[i]);
        ASSERT_FALSE(occupied.count({d.x - 1, d.height}));
        ASSERT_FALSE(occupied.count({d.x + 1, d.height}));
        ASSERT_GE(d.time, last_time);
        occupied.insert({d.x, d.height});
        shadow[i] = d.height;
        last_time = d.time;
      });
    }
  }
}

TEST(EstimateDensity, ZeroAtTimeZero) {
  const auto est = estimate_density(timed(3, 10.0), 0, 1, 0.0, 500);
  EXPECT_EQ(est.mean, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
  EXPECT_EQ(est.trials, 500u);
}

TEST(EstimateDensity, RejectsInvalidQueries) {
  const auto config = timed(3, 10.0);
  EXPECT_THROW(estimate_density(config, 2, 1, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(estimate_density(config, 0, 0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(estimate_density(config, 0, 1, 11.0, 10), std::invalid_argument);
  EXPECT_THROW(estimate_density(config, 0, 1, -1.0, 10), std::invalid_argument);
  EXPECT_THROW(estimate_density(config, 0, 1, 1.0, 0), std::invalid_argument);
}

TEST(EstimateDensity, FirstLayerSaturatesAtOneThird) {
  const auto est = estimate_density(timed(3, 100.0, 5), 0, 1, 100.0, 20000);
  EXPECT_LT(std::abs(est.mean - 1.0 / 3.0), 4 * est.std_error);
}

TEST(EstimateEndDensity, FlagsUnfrozenTrials) {
  const auto short_run = estimate_end_density(timed(3, 0.5, 3), 0, 30, 200);
  EXPECT_TRUE(short_run.warning());
  EXPECT_EQ(short_run.flagged_trials, 200u);

  const auto long_run = estimate_end_density(timed(3, suggested_horizon(3), 3), 0, 3, 2000);
  EXPECT_FALSE(long_run.warning());
}

TEST(EstimateEndDensity, SmallSampleAgreement) {
  const auto config = timed(3, suggested_horizon(4), 11);
  for (std::uint32_t r = 1; r <= 4; ++r) {
    const auto est = estimate_end_density(config, 0, static_cast<int>(r), 20000);
    EXPECT_LT(std::abs(est.mean - to_double(end_density(r))), 4 * est.std_error) << "r=" << r;
  }
}

TEST(EstimateBulkDensity, GroundLayerAndFlags) {
  const auto ground = estimate_bulk_density(timed(3, 50.0, 8), 0, 1, 1, 20000);
  EXPECT_LT(std::abs(ground.mean - 1.0 / 3.0), 4 * ground.std_error);
  EXPECT_FALSE(ground.warning());

  const auto too_high = estimate_bulk_density(timed(3, 5.0, 8), 0, 20, 60, 50);
  EXPECT_TRUE(too_high.warning());
  EXPECT_THROW(estimate_bulk_density(timed(3, 5.0), 0, 5, 4, 10), std::invalid_argument);
}

TEST(RunStats, RequiresWidthThree) {
  EXPECT_THROW(collect_run_stats(timed(5, 50.0), 10), std::invalid_argument);
  EXPECT_THROW(collect_run_stats(timed(3, 50.0), 0), std::invalid_argument);
}

TEST(RunStats, HistogramsAgreeWithClosedForms) {
  const RunStats stats = collect_run_stats(timed(3, 200.0, 21), 300);
  ASSERT_EQ(stats.gap_samples(), stats.border_samples());
  ASSERT_GT(stats.gap_samples(), 10000u);
  for (const auto& [gap, count] : stats.gap_counts) {
    EXPECT_GE(gap, 0);
  }
  const auto mean = stats.mean_gap();
  EXPECT_LT(std::abs(mean.mean - (1.0 + 1.0 / std::sqrt(5.0))), 4 * mean.std_error);
  const auto p0 = stats.border_count_probability(0);
  EXPECT_LT(std::abs(p0.mean - 1.0 / 3.0), 4 * p0.std_error);
  const auto x1 = stats.gap_probability(1);
  EXPECT_LT(std::abs(x1.mean - 8.0 / 27.0), 4 * x1.std_error);
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
  const auto config = timed(5, 40.0, 2024);
  const auto serial = estimate_bulk_density(config, 1, 3, 30, 400, RunOptions{1});
  const auto parallel = estimate_bulk_density(config, 1, 3, 30, 400, RunOptions{4});
  EXPECT_EQ(serial.mean, parallel.mean);
  EXPECT_EQ(serial.std_error, parallel.std_error);
  EXPECT_EQ(serial.flagged_trials, parallel.flagged_trials);

  const auto stats_serial = collect_run_stats(timed(3, 50.0, 2), 64, RunOptions{1});
  const auto stats_parallel = collect_run_stats(timed(3, 50.0, 2), 64, RunOptions{3});
  EXPECT_EQ(stats_serial.gap_counts, stats_parallel.gap_counts);
  EXPECT_EQ(stats_serial.border_counts, stats_parallel.border_counts);
}

TEST(Summarize, MeanAndStandardError) {
  const auto est = summarize({1.0, 0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(est.mean, 0.5);
  // sample variance 1/3, stderr sqrt(1/12)
  EXPECT_DOUBLE_EQ(est.std_error, std::sqrt(1.0 / 12.0));
  EXPECT_EQ(summarize({}).trials, 0u);
  EXPECT_EQ(summarize({0.25}).std_error, 0.0);
}

TEST(TrialRng, Ranges) {
  TrialRng rng(1, 2);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_open_zero();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    ASSERT_LT(rng.below(7), 7u);
    ASSERT_GT(rng.exponential(3.0), 0.0);
  }
}

}  // namespace
}  // namespace mlpark
