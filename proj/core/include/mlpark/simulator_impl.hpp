#pragma once

// Template definitions for simulator.hpp. Not meant to be included directly.

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>

namespace mlpark {

template <class Observer>
SimState simulate_trial(const LatticeConfig& config, std::uint64_t trial, Observer&& observer) {
  const int width = config.active_width;
  const int half = config.half_width();
  const double time_limit = config.horizon_time.value_or(std::numeric_limits<double>::infinity());
  const std::uint64_t particle_limit =
      config.horizon_particles.value_or(std::numeric_limits<std::uint64_t>::max());

  // tops[0] and tops[width + 1] are the ghost columns.
  std::vector<int> tops(static_cast<std::size_t>(width) + 2, 0);
  TrialRng rng(config.seed, trial);

  SimState state;
  while (state.particles < particle_limit) {
    const double next = state.clock + rng.exponential(static_cast<double>(width));
    if (next > time_limit) {
      state.clock = time_limit;
      break;
    }
    state.clock = next;
    const auto column = static_cast<std::size_t>(rng.below(static_cast<std::uint32_t>(width))) + 1;
    const int neighborhood = std::max({tops[column - 1], tops[column], tops[column + 1]});
    tops[column] = neighborhood + 1;
    ++state.particles;

    const Deposition event{static_cast<int>(column) - 1 - half, neighborhood + 1, state.clock,
                           neighborhood};
    if constexpr (std::is_same_v<std::invoke_result_t<Observer&, const Deposition&>, bool>) {
      if (!observer(event)) {
        break;
      }
    } else {
      observer(event);
    }
  }
  state.column_top.assign(tops.begin() + 1, tops.end() - 1);
  return state;
}

namespace detail {

unsigned resolve_threads(unsigned requested, std::uint64_t trials);

/// Runs fn(trial) for trial = 0..trials-1 on a worker pool and returns the
/// results in trial order, so any later reduction is independent of the
/// thread count.
template <class Fn>
auto map_trials(std::uint64_t trials, RunOptions options, Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, std::uint64_t>;
  static_assert(!std::is_same_v<Result, bool>, "vector<bool> elements are not independently writable");
  std::vector<Result> results(trials);
  const unsigned threads = resolve_threads(options.threads, trials);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
        results[i] = fn(i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next.store(trials);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return results;
}

}  // namespace detail
}  // namespace mlpark
