#include "cli/commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "mlpark/analytic.hpp"

namespace mlpark::cli {
namespace {

constexpr int kMaxLayer = 1000;
constexpr int kRunsMaxValue = 5;

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const char* what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  if (used != text.size() || value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max()) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return static_cast<int>(value);
}

std::string fmt(double value) { return to_decimal_string(value, 12); }

std::vector<double> times_or_throw(const std::vector<double>& times, const char* command) {
  if (times.empty()) {
    throw UsageError(std::string(command) + ": --times or --time is required");
  }
  return times;
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) {
    throw UsageError("--trials must be >= 1");
  }
}

LatticeConfig make_config(int width, double horizon, std::uint64_t seed) {
  LatticeConfig config;
  config.active_width = width;
  config.horizon_time = horizon;
  config.seed = seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

double max_time(const std::vector<double>& times) {
  return *std::max_element(times.begin(), times.end());
}

void write_sim_row(std::ostream& os, const std::string& quantity, const SimulateArgs& args,
                   const std::string& layer, const std::string& time, const std::string& n,
                   const SimEstimate& est) {
  os << quantity << ',' << args.width << ',' << args.site << ',' << layer << ',' << time << ','
     << n << ',' << fmt(est.mean) << ',' << fmt(est.std_error) << ',' << est.trials << ','
     << est.flagged_trials << ',' << args.seed << '\n';
}

}  // namespace

// --- flag parsing -----------------------------------------------------------

LayerRange parse_layers(const std::string& text) {
  LayerRange range;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    range.first = range.last = parse_int(text, "layer");
  } else {
    range.first = parse_int(text.substr(0, dots), "layer range start");
    range.last = parse_int(text.substr(dots + 2), "layer range end");
  }
  if (range.first < 1 || range.last < range.first) {
    throw UsageError("layer range must satisfy 1 <= A <= B, got '" + text + "'");
  }
  if (range.last > kMaxLayer) {
    throw UsageError("layer " + std::to_string(range.last) + " exceeds the supported maximum " +
                     std::to_string(kMaxLayer));
  }
  return range;
}

std::vector<double> parse_times(const std::string& text) {
  const auto first_colon = text.find(':');
  const auto second_colon =
      first_colon == std::string::npos ? std::string::npos : text.find(':', first_colon + 1);
  if (second_colon == std::string::npos) {
    throw UsageError("time grid must look like A:B:STEP, got '" + text + "'");
  }
  const double start = parse_double(text.substr(0, first_colon), "time grid start");
  const double stop =
      parse_double(text.substr(first_colon + 1, second_colon - first_colon - 1), "time grid end");
  const double step = parse_double(text.substr(second_colon + 1), "time grid step");
  if (start < 0.0 || stop < start || step <= 0.0) {
    throw UsageError("time grid needs 0 <= A <= B and STEP > 0, got '" + text + "'");
  }
  const double span = (stop - start) / step;
  if (span > 1e6) {
    throw UsageError("time grid has too many points: '" + text + "'");
  }
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> times;
  times.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    times.push_back(start + static_cast<double>(i) * step);
  }
  return times;
}

double parse_time(const std::string& text) {
  const double t = parse_double(text, "time");
  if (t < 0.0) {
    throw UsageError("time must be >= 0, got '" + text + "'");
  }
  return t;
}

SimMode parse_sim_mode(const std::string& text) {
  if (text == "density") return SimMode::kDensity;
  if (text == "end") return SimMode::kEnd;
  if (text == "bulk") return SimMode::kBulk;
  if (text == "runs") return SimMode::kRuns;
  throw UsageError("unknown mode '" + text + "' (expected density, end, bulk or runs)");
}

// --- commands ---------------------------------------------------------------

std::string cmd_density(const DensityArgs& args) {
  const auto times = times_or_throw(args.times, "density");
  std::vector<DensityProfile> profiles;
  for (int r = args.layers.first; r <= args.layers.last; ++r) {
    profiles.push_back(density_profile(static_cast<std::uint32_t>(r)));
  }
  std::ostringstream os;
  os << "t,r,rho_exact\n";
  for (const double t : times) {
    for (const auto& profile : profiles) {
      os << fmt(t) << ',' << profile.layer << ',' << fmt(profile(t)) << '\n';
    }
  }
  return os.str();
}

std::string cmd_end_density(const EndDensityArgs& args) {
  const auto values = end_densities(static_cast<std::uint32_t>(args.layers.last));
  const std::string limit = fmt(limit_density());
  std::ostringstream os;
  os << "r,rho_exact_rational,rho_exact_decimal,limit\n";
  for (int r = args.layers.first; r <= args.layers.last; ++r) {
    const Rational& value = values[static_cast<std::size_t>(r - 1)];
    os << r << ',' << to_fraction_string(value) << ',' << to_decimal_string(value) << ',' << limit
       << '\n';
  }
  return os.str();
}

std::string cmd_simulate(const SimulateArgs& args) {
  require_trials(args.trials);
  const RunOptions options{args.threads};
  const auto check_site = [&] {
    if (std::abs(args.site) > (args.width - 1) / 2) {
      throw UsageError("--site " + std::to_string(args.site) + " is outside a lattice of width " +
                       std::to_string(args.width));
    }
  };

  std::ostringstream os;
  os << "quantity,width,site,layer,t,n,mean,stderr,trials,flagged,seed\n";
  switch (args.mode) {
    case SimMode::kDensity: {
      const auto times = times_or_throw(args.times, "simulate --mode density");
      const auto config = make_config(args.width, args.horizon.value_or(max_time(times)), args.seed);
      check_site();
      for (const double t : times) {
        for (int r = args.layers.first; r <= args.layers.last; ++r) {
          const auto est = estimate_density(config, args.site, r, t, args.trials, options);
          write_sim_row(os, "density", args, std::to_string(r), fmt(t), "", est);
        }
      }
      break;
    }
    case SimMode::kEnd: {
      const auto config = make_config(
          args.width, args.horizon.value_or(suggested_horizon(args.layers.last)), args.seed);
      check_site();
      for (int r = args.layers.first; r <= args.layers.last; ++r) {
        const auto est = estimate_end_density(config, args.site, r, args.trials, options);
        write_sim_row(os, "end_density", args, std::to_string(r), "inf", "", est);
      }
      break;
    }
    case SimMode::kBulk: {
      const auto config = make_config(
          args.width, args.horizon.value_or(suggested_horizon(args.layers.last)), args.seed);
      check_site();
      const auto est = estimate_bulk_density(config, args.site, args.layers.first,
                                             args.layers.last, args.trials, options);
      write_sim_row(os, "bulk_density", args,
                    std::to_string(args.layers.first) + ".." + std::to_string(args.layers.last),
                    "inf", "", est);
      break;
    }
    case SimMode::kRuns: {
      if (args.width != 3) {
        throw UsageError("--mode runs requires --width 3");
      }
      if (args.site != 0) {
        throw UsageError("--mode runs measures the center column; --site must be 0");
      }
      const auto config =
          make_config(args.width, args.horizon.value_or(kDefaultRunsHorizon), args.seed);
      const RunStats stats = collect_run_stats(config, args.trials, options);
      write_sim_row(os, "mean_gap", args, "", "", "", stats.mean_gap());
      for (int n = 0; n <= kRunsMaxValue; ++n) {
        write_sim_row(os, "p_border_count", args, "", "", std::to_string(n),
                      stats.border_count_probability(n));
      }
      for (int x = 0; x <= kRunsMaxValue; ++x) {
        write_sim_row(os, "p_gap", args, "", "", std::to_string(x), stats.gap_probability(x));
      }
      break;
    }
  }
  return os.str();
}

double CompareRow::z_score() const {
  const double diff = mc.mean - exact;
  if (mc.std_error > 0.0) {
    return diff / mc.std_error;
  }
  if (diff == 0.0) {
    return 0.0;
  }
  return diff > 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
}

std::vector<CompareRow> compare_rows(const CompareArgs& args) {
  require_trials(args.trials);
  const RunOptions options{args.threads};
  std::vector<CompareRow> rows;
  if (args.end) {
    const auto exact = end_densities(static_cast<std::uint32_t>(args.layers.last));
    const auto config =
        make_config(3, args.horizon.value_or(suggested_horizon(args.layers.last)), args.seed);
    for (int r = args.layers.first; r <= args.layers.last; ++r) {
      CompareRow row;
      row.layer = r;
      row.exact_rational = exact[static_cast<std::size_t>(r - 1)];
      row.exact = to_double(*row.exact_rational);
      row.mc = estimate_end_density(config, 0, r, args.trials, options);
      rows.push_back(std::move(row));
    }
    return rows;
  }
  const auto times = times_or_throw(args.times, "compare --mode density");
  const auto config = make_config(3, args.horizon.value_or(max_time(times)), args.seed);
  for (const double t : times) {
    for (int r = args.layers.first; r <= args.layers.last; ++r) {
      CompareRow row;
      row.layer = r;
      row.time = t;
      row.exact = density_at(static_cast<std::uint32_t>(r), t);
      row.mc = estimate_density(config, 0, r, t, args.trials, options);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string cmd_compare(const CompareArgs& args) {
  const auto rows = compare_rows(args);
  std::ostringstream os;
  os << "r,t,exact_rational,exact_decimal,mc_mean,mc_stderr,z\n";
  double max_abs_z = 0.0;
  for (const auto& row : rows) {
    const double z = row.z_score();
    max_abs_z = std::max(max_abs_z, std::abs(z));
    os << row.layer << ',' << (row.time ? fmt(*row.time) : "inf") << ','
       << (row.exact_rational ? to_fraction_string(*row.exact_rational) : "") << ','
       << fmt(row.exact) << ',' << fmt(row.mc.mean) << ',' << fmt(row.mc.std_error) << ','
       << fmt(z) << '\n';
  }
  os << "# max_abs_z=" << fmt(max_abs_z) << '\n';
  return os.str();
}

// --- argv front end ---------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and simulated densities for multilayer parking with screening"};
  app.require_subcommand(1);

  std::string layers = "1..4";
  std::string times;
  std::string time;
  std::string mode;
  double horizon_value = 0.0;
  std::vector<CLI::Option*> horizon_flags;
  std::uint64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  int width = 3;
  int site = 0;
  unsigned threads = 0;

  auto add_grid = [&](CLI::App* sub) {
    auto* grid = sub->add_option("--times", times, "Time grid A:B:STEP");
    sub->add_option("--time", time, "Single time T")->excludes(grid);
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--trials", trials, "Number of independent trials")->required();
    sub->add_option("--seed", seed, "Base seed (default " + std::to_string(kDefaultSeed) + ")");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    horizon_flags.push_back(sub->add_option("--horizon", horizon_value, "Simulation horizon time"));
  };

  auto* density = app.add_subcommand("density", "Exact time-dependent center densities");
  density->add_option("--layers", layers, "Layer range A..B");
  add_grid(density);

  auto* end = app.add_subcommand("end-density", "Exact end-densities of the center column");
  end->add_option("--layers", layers, "Layer range A..B");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
  simulate->add_option("--mode", mode, "density | end | bulk | runs")->required();
  simulate->add_option("--width", width, "Number of active columns (odd)");
  simulate->add_option("--site", site, "Column position x");
  simulate->add_option("--layers", layers, "Layer range A..B (bulk: averaging window)");
  add_grid(simulate);
  add_sampling(simulate);

  auto* compare = app.add_subcommand("compare", "Exact versus simulated center densities");
  compare->add_option("--mode", mode, "end | density")->required();
  compare->add_option("--layers", layers, "Layer range A..B");
  add_grid(compare);
  add_sampling(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  std::optional<double> horizon;
  for (const auto* flag : horizon_flags) {
    if (flag->count() > 0) {
      horizon = horizon_value;
    }
  }

  try {
    if (horizon && !(std::isfinite(*horizon) && *horizon > 0.0)) {
      throw UsageError("--horizon must be positive and finite");
    }
    const auto grid = [&]() -> std::vector<double> {
      if (!times.empty()) return parse_times(times);
      if (!time.empty()) return {parse_time(time)};
      return {};
    };

    std::string csv;
    if (density->parsed()) {
      csv = cmd_density({parse_layers(layers), grid()});
    } else if (end->parsed()) {
      csv = cmd_end_density({parse_layers(layers)});
    } else if (simulate->parsed()) {
      SimulateArgs args;
      args.mode = parse_sim_mode(mode);
      args.width = width;
      args.site = site;
      args.layers = parse_layers(layers);
      args.times = grid();
      args.horizon = horizon;
      args.trials = trials;
      args.seed = seed;
      args.threads = threads;
      csv = cmd_simulate(args);
    } else if (compare->parsed()) {
      CompareArgs args;
      if (mode != "end" && mode != "density") {
        throw UsageError("compare: unknown mode '" + mode + "' (expected end or density)");
      }
      args.end = mode == "end";
      args.layers = parse_layers(layers);
      args.times = grid();
      args.horizon = horizon;
      args.trials = trials;
      args.seed = seed;
      args.threads = threads;
      csv = cmd_compare(args);
    }
    out << csv;
    out.flush();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mlpark::cli
