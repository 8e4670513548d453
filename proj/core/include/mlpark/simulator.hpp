#pragma once

// Monte Carlo simulation of multilayer parking with screening on a strip of
// m active columns. Columns are labeled -(m-1)/2 .. (m-1)/2; one ghost column
// beyond each end never receives arrivals and stays empty. Every active
// column receives rate-1 Poisson arrivals. An arrival at x is deposited at
//
//   1 + max(top(x - 1), top(x), top(x + 1))
//
// where top is the highest occupied layer of a column (0 when empty).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace mlpark {

struct LatticeConfig {
  /// Number of active columns; positive and odd.
  int active_width = 3;
  /// Exactly one horizon must be set.
  std::optional<double> horizon_time;
  std::optional<std::uint64_t> horizon_particles;
  std::uint64_t seed = 0;

  int half_width() const { return (active_width - 1) / 2; }
  bool contains(int x) const { return x >= -half_width() && x <= half_width(); }

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// One deposition event as seen by a trial observer.
struct Deposition {
  int x = 0;
  int height = 0;
  double time = 0.0;
  /// max(top(x-1), top(x), top(x+1)) immediately before this deposition.
  int neighborhood_max = 0;
};

struct SimState {
  /// Tops of the active columns, index x + half_width.
  std::vector<int> column_top;
  /// Heights deposited in each active column, in deposition order. Filled
  /// only when requested from run_trial.
  std::vector<std::vector<int>> column_heights;
  double clock = 0.0;
  std::uint64_t particles = 0;

  int top(int x) const { return column_top.at(static_cast<std::size_t>(x + half_width())); }
  int half_width() const { return static_cast<int>(column_top.size() - 1) / 2; }
  int min_top() const;
  bool occupied(int x, int r) const;  // requires recorded heights
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  /// Trials that did not satisfy the frozen-layer or window requirement.
  std::uint64_t flagged_trials = 0;

  bool warning() const { return flagged_trials > 0; }
};

struct RunStats {
  /// Histogram of empty runs X between consecutive center particles.
  std::map<int, std::uint64_t> gap_counts;
  /// Histogram of border arrivals N between consecutive center arrivals.
  std::map<int, std::uint64_t> border_counts;

  std::uint64_t gap_samples() const;
  std::uint64_t border_samples() const;

  /// Mean of X with std_error = sd / sqrt(samples).
  SimEstimate mean_gap() const;
  /// Empirical P(X = x) with binomial std_error.
  SimEstimate gap_probability(int x) const;
  /// Empirical P(N = n) with binomial std_error.
  SimEstimate border_count_probability(int n) const;
};

/// Thread count 0 means std::thread::hardware_concurrency().
struct RunOptions {
  unsigned threads = 0;
};

/// Center gaps starting below this layer are excluded from run statistics.
inline constexpr int kTransientLayers = 10;

/// Per-trial generator: mt19937_64 seeded with SplitMix64(seed, trial).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform on (0, 1].
  double uniform_open_zero();
  /// Exponential with the given rate.
  double exponential(double rate);
  /// Uniform integer in [0, n).
  std::uint32_t below(std::uint32_t n);

 private:
  std::mt19937_64 engine_;
};

/// Simulates one trial, calling observer(const Deposition&) after each
/// deposition. The observer may return false to stop the trial early (a
/// void-returning observer never stops it). Deterministic in
/// (config, trial).
template <class Observer>
SimState simulate_trial(const LatticeConfig& config, std::uint64_t trial, Observer&& observer);

/// Simulates trial 0 of config, recording column histories when requested.
SimState run_trial(const LatticeConfig& config, bool record_heights = true);
SimState run_trial(const LatticeConfig& config, std::uint64_t trial, bool record_heights);

/// Occupancy frequency of (x, r) at time t across trials.
SimEstimate estimate_density(const LatticeConfig& config, int x, int r, double t,
                             std::uint64_t trials, RunOptions options = {});

/// Occupancy frequency of (x, r) at the horizon. A trial is flagged when
/// column x has not yet grown past r, i.e. the site could still change.
SimEstimate estimate_end_density(const LatticeConfig& config, int x, int r, std::uint64_t trials,
                                 RunOptions options = {});

/// Mean occupancy of column x over layers [r_min, r_max]. A trial is flagged
/// when column x has not grown past r_max by the horizon.
SimEstimate estimate_bulk_density(const LatticeConfig& config, int x, int r_min, int r_max,
                                  std::uint64_t trials, RunOptions options = {});

/// Center-column gap and border-count histograms. Requires active_width == 3.
///
/// Each trial runs until the first center arrival after the horizon, so every
/// window that opened before the horizon is complete. A window is kept when
/// its lower center particle sits at layer >= kTransientLayers. Both rules
/// look only at the past, so kept windows are unbiased samples of (X, N).
RunStats collect_run_stats(const LatticeConfig& config, std::uint64_t trials,
                           RunOptions options = {});

/// Horizon time after which column tops are expected to be well past
/// 2 * layer + 20 (top grows roughly like t / rho per column).
double suggested_horizon(int layer);

/// Sample mean and std_error of per-trial values, reduced in index order.
SimEstimate summarize(const std::vector<double>& values);

}  // namespace mlpark

#include "mlpark/simulator_impl.hpp"
