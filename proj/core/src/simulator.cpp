#include "mlpark/simulator.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mlpark/analytic.hpp"

namespace mlpark {
namespace {

__extension__ using Uint128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t state = seed;
  std::uint64_t key = splitmix64(state) ^ trial;
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(key)),
                    static_cast<std::uint32_t>(splitmix64(key)),
                    static_cast<std::uint32_t>(splitmix64(key)),
                    static_cast<std::uint32_t>(splitmix64(key))};
  return std::mt19937_64(seq);
}

void require_site(const LatticeConfig& config, int x, int r, const char* what) {
  if (!config.contains(x)) {
    throw std::invalid_argument(std::string(what) + ": position " + std::to_string(x) +
                                " outside the active columns");
  }
  if (r < 1) {
    throw std::invalid_argument(std::string(what) + ": layer must be >= 1");
  }
}

void require_trials(std::uint64_t trials, const char* what) {
  if (trials == 0) {
    throw std::invalid_argument(std::string(what) + ": trials must be >= 1");
  }
}

SimEstimate binomial_estimate(std::uint64_t hits, std::uint64_t samples) {
  SimEstimate out;
  out.trials = samples;
  if (samples == 0) {
    return out;
  }
  const double n = static_cast<double>(samples);
  out.mean = static_cast<double>(hits) / n;
  out.std_error = std::sqrt(out.mean * (1.0 - out.mean) / n);
  return out;
}

std::uint64_t total_count(const std::map<int, std::uint64_t>& histogram) {
  std::uint64_t total = 0;
  for (const auto& [value, count] : histogram) {
    total += count;
  }
  return total;
}

struct SiteOutcome {
  double occupied = 0.0;
  bool flagged = false;
};

SimEstimate summarize_outcomes(const std::vector<SiteOutcome>& outcomes) {
  std::vector<double> values;
  values.reserve(outcomes.size());
  std::uint64_t flagged = 0;
  for (const auto& o : outcomes) {
    values.push_back(o.occupied);
    flagged += o.flagged ? 1 : 0;
  }
  SimEstimate est = summarize(values);
  est.flagged_trials = flagged;
  return est;
}

}  // namespace

// --- configuration and state ------------------------------------------------

void LatticeConfig::validate() const {
  if (active_width < 1 || active_width % 2 == 0) {
    throw std::invalid_argument("lattice width must be a positive odd integer, got " +
                                std::to_string(active_width));
  }
  if (horizon_time.has_value() == horizon_particles.has_value()) {
    throw std::invalid_argument("exactly one of horizon time and particle cap must be set");
  }
  if (horizon_time && !(std::isfinite(*horizon_time) && *horizon_time >= 0.0)) {
    throw std::invalid_argument("horizon time must be finite and >= 0");
  }
  if (horizon_particles && *horizon_particles == 0) {
    throw std::invalid_argument("particle cap must be >= 1");
  }
}

int SimState::min_top() const { return *std::min_element(column_top.begin(), column_top.end()); }

bool SimState::occupied(int x, int r) const {
  if (column_heights.empty()) {
    throw std::logic_error("SimState::occupied: trial was run without recording heights");
  }
  const auto& heights = column_heights.at(static_cast<std::size_t>(x + half_width()));
  return std::binary_search(heights.begin(), heights.end(), r);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(seeded_engine(seed, trial)) {}

double TrialRng::uniform_open_zero() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double TrialRng::exponential(double rate) { return -std::log(uniform_open_zero()) / rate; }

std::uint32_t TrialRng::below(std::uint32_t n) {
  const auto wide = static_cast<Uint128>(engine_()) * n;
  return static_cast<std::uint32_t>(wide >> 64);
}

namespace detail {

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
  unsigned threads = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (trials < threads) {
    threads = static_cast<unsigned>(std::max<std::uint64_t>(trials, 1));
  }
  return threads;
}

}  // namespace detail

SimEstimate summarize(const std::vector<double>& values) {
  SimEstimate out;
  out.trials = values.size();
  if (values.empty()) {
    return out;
  }
  // Welford, in index order.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t n = 0;
  for (const double v : values) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }
  out.mean = mean;
  if (n > 1) {
    const double variance = m2 / static_cast<double>(n - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(n));
  }
  return out;
}

double suggested_horizon(int layer) { return (2.0 * layer + 20.0) / limit_density(); }

// --- trials -----------------------------------------------------------------

SimState run_trial(const LatticeConfig& config, bool record_heights) {
  return run_trial(config, 0, record_heights);
}

SimState run_trial(const LatticeConfig& config, std::uint64_t trial, bool record_heights) {
  config.validate();
  std::vector<std::vector<int>> heights;
  if (record_heights) {
    heights.resize(static_cast<std::size_t>(config.active_width));
  }
  const int half = config.half_width();
  SimState state = simulate_trial(config, trial, [&](const Deposition& d) {
    if (record_heights) {
      heights[static_cast<std::size_t>(d.x + half)].push_back(d.height);
    }
  });
  state.column_heights = std::move(heights);
  return state;
}

// --- estimators -------------------------------------------------------------

SimEstimate estimate_density(const LatticeConfig& config, int x, int r, double t,
                             std::uint64_t trials, RunOptions options) {
  config.validate();
  require_site(config, x, r, "estimate_density");
  require_trials(trials, "estimate_density");
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("estimate_density: time must be finite and >= 0");
  }
  if (config.horizon_time && t > *config.horizon_time) {
    throw std::invalid_argument("estimate_density: time exceeds the horizon");
  }
  LatticeConfig run = config;
  run.horizon_time = t;

  // Once column x has reached layer r, site (x, r) can no longer change.
  const auto outcomes = detail::map_trials(trials, options, [&](std::uint64_t trial) {
    SiteOutcome outcome;
    simulate_trial(run, trial, [&](const Deposition& d) {
      if (d.x != x) {
        return true;
      }
      if (d.height == r) {
        outcome.occupied = 1.0;
      }
      return d.height < r;
    });
    return outcome;
  });
  return summarize_outcomes(outcomes);
}

SimEstimate estimate_end_density(const LatticeConfig& config, int x, int r, std::uint64_t trials,
                                 RunOptions options) {
  config.validate();
  require_site(config, x, r, "estimate_end_density");
  require_trials(trials, "estimate_end_density");

  const auto outcomes = detail::map_trials(trials, options, [&](std::uint64_t trial) {
    SiteOutcome outcome;
    bool frozen = false;
    simulate_trial(config, trial, [&](const Deposition& d) {
      if (d.x != x) {
        return true;
      }
      if (d.height == r) {
        outcome.occupied = 1.0;
      }
      frozen = d.height >= r;
      return !frozen;
    });
    outcome.flagged = !frozen;
    return outcome;
  });
  return summarize_outcomes(outcomes);
}

SimEstimate estimate_bulk_density(const LatticeConfig& config, int x, int r_min, int r_max,
                                  std::uint64_t trials, RunOptions options) {
  config.validate();
  require_site(config, x, r_min, "estimate_bulk_density");
  require_trials(trials, "estimate_bulk_density");
  if (r_max < r_min) {
    throw std::invalid_argument("estimate_bulk_density: empty layer window");
  }
  const double window = static_cast<double>(r_max - r_min + 1);

  const auto outcomes = detail::map_trials(trials, options, [&](std::uint64_t trial) {
    SiteOutcome outcome;
    int hits = 0;
    bool frozen = false;
    simulate_trial(config, trial, [&](const Deposition& d) {
      if (d.x != x) {
        return true;
      }
      if (d.height >= r_min && d.height <= r_max) {
        ++hits;
      }
      frozen = d.height >= r_max;
      return !frozen;
    });
    outcome.occupied = hits / window;
    outcome.flagged = !frozen;
    return outcome;
  });
  return summarize_outcomes(outcomes);
}

// --- run statistics ---------------------------------------------------------

std::uint64_t RunStats::gap_samples() const { return total_count(gap_counts); }

std::uint64_t RunStats::border_samples() const { return total_count(border_counts); }

SimEstimate RunStats::mean_gap() const {
  SimEstimate out;
  const std::uint64_t samples = gap_samples();
  out.trials = samples;
  if (samples == 0) {
    return out;
  }
  const double n = static_cast<double>(samples);
  double sum = 0.0;
  for (const auto& [gap, count] : gap_counts) {
    sum += static_cast<double>(gap) * static_cast<double>(count);
  }
  out.mean = sum / n;
  if (samples > 1) {
    double ss = 0.0;
    for (const auto& [gap, count] : gap_counts) {
      const double dev = gap - out.mean;
      ss += dev * dev * static_cast<double>(count);
    }
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

SimEstimate RunStats::gap_probability(int x) const {
  const auto it = gap_counts.find(x);
  return binomial_estimate(it == gap_counts.end() ? 0 : it->second, gap_samples());
}

SimEstimate RunStats::border_count_probability(int n) const {
  const auto it = border_counts.find(n);
  return binomial_estimate(it == border_counts.end() ? 0 : it->second, border_samples());
}

RunStats collect_run_stats(const LatticeConfig& config, std::uint64_t trials, RunOptions options) {
  config.validate();
  require_trials(trials, "collect_run_stats");
  if (config.active_width != 3) {
    throw std::invalid_argument("collect_run_stats: requires exactly 3 active columns");
  }
  // The stop rule below replaces the time horizon; a particle cap still applies.
  LatticeConfig run = config;
  const double horizon = config.horizon_time.value_or(std::numeric_limits<double>::infinity());
  run.horizon_time.reset();
  if (!run.horizon_particles) {
    run.horizon_particles = std::numeric_limits<std::uint64_t>::max();
  }

  using Samples = std::vector<std::pair<int, int>>;  // (gap, border count)
  const auto per_trial = detail::map_trials(trials, options, [&](std::uint64_t trial) {
    Samples samples;
    int last_center = 0;
    int borders = 0;
    simulate_trial(run, trial, [&](const Deposition& d) {
      if (d.x != 0) {
        ++borders;
        return true;
      }
      if (last_center >= kTransientLayers) {
        samples.emplace_back(d.height - last_center - 1, borders);
      }
      last_center = d.height;
      borders = 0;
      return d.time <= horizon;
    });
    return samples;
  });

  RunStats stats;
  for (const auto& samples : per_trial) {
    for (const auto& [gap, borders] : samples) {
      ++stats.gap_counts[gap];
      ++stats.border_counts[borders];
    }
  }
  return stats;
}

}  // namespace mlpark
