#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlpark/exactmath.hpp"
#include "mlpark/simulator.hpp"

namespace mlpark::cli {

/// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20150701;

/// Horizon for run statistics when --horizon is not given.
inline constexpr double kDefaultRunsHorizon = 200.0;

/// Error raised for malformed flags; main() prints it and exits nonzero.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LayerRange {
  int first = 1;
  int last = 1;
};

/// "A..B" with 1 <= A <= B, or a single "A".
LayerRange parse_layers(const std::string& text);

/// "A:B:STEP", inclusive of B when it lies on the grid (within 1e-9 steps).
std::vector<double> parse_times(const std::string& text);

/// Single nonnegative finite time.
double parse_time(const std::string& text);

enum class SimMode { kDensity, kEnd, kBulk, kRuns };
SimMode parse_sim_mode(const std::string& text);

struct DensityArgs {
  LayerRange layers;
  std::vector<double> times;
};

struct EndDensityArgs {
  LayerRange layers;
};

struct SimulateArgs {
  SimMode mode = SimMode::kEnd;
  int width = 3;
  int site = 0;
  LayerRange layers;
  std::vector<double> times;
  std::optional<double> horizon;
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct CompareArgs {
  bool end = true;
  LayerRange layers;
  std::vector<double> times;
  std::optional<double> horizon;
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct CompareRow {
  int layer = 0;
  std::optional<double> time;  // empty means t = inf
  std::optional<Rational> exact_rational;
  double exact = 0.0;
  SimEstimate mc;

  /// (mc.mean - exact) / std_error; 0 when both agree with zero spread.
  double z_score() const;
};

// Each command returns the complete CSV text or throws; nothing is written on
// failure.
std::string cmd_density(const DensityArgs& args);
std::string cmd_end_density(const EndDensityArgs& args);
std::string cmd_simulate(const SimulateArgs& args);
std::string cmd_compare(const CompareArgs& args);

std::vector<CompareRow> compare_rows(const CompareArgs& args);

/// Parses argv and runs the selected subcommand. Writes CSV to out and
/// diagnostics to err; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlpark::cli
