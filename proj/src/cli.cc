#include "relaygame/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "relaygame/csv.h"
#include "relaygame/simulator.h"
#include "relaygame/solver.h"

namespace relaygame {
namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  bool accelerate = false;
  std::string strategy;
};

// Validation failures detected after the config parsed.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputFile {
 public:
  OutputFile(const fs::path& dir, const std::string& name)
      : path_(dir / name), stream_(path_, std::ios::binary | std::ios::trunc) {
    if (!stream_) throw std::runtime_error("cannot write " + path_.string());
  }
  ~OutputFile() noexcept(false) {
    stream_.flush();
    if (!stream_ && std::uncaught_exceptions() == 0) {
      throw std::runtime_error("write failed: " + path_.string());
    }
  }
  std::ostream& stream() { return stream_; }

 private:
  fs::path path_;
  std::ofstream stream_;
};

fs::path PrepareOutputDir(const RunConfig& cfg, const CommonFlags& flags) {
  const fs::path dir = flags.out_dir.empty() ? cfg.output_dir : flags.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir.string() +
                             ": " + ec.message());
  }
  return dir;
}

RunConfig LoadWithOverrides(const CommonFlags& flags) {
  RunConfig cfg = LoadConfig(flags.config_path);
  if (flags.seed_given) cfg.seed = flags.seed;
  return cfg;
}

const SnrGrid& SolveGrid(const RunConfig& cfg) {
  if (!cfg.grid.fixed) throw ConfigError("grid", "no levels configured");
  return *cfg.grid.fixed;
}

void WriteSurfaces(const fs::path& dir, const ExtremalEquilibria& eq) {
  const std::pair<const char*, const Policy*> policies[] = {
      {"largest", &eq.largest}, {"smallest", &eq.smallest}};
  for (const auto& [name, policy] : policies) {
    for (Player p : {Player::kFirst, Player::kSecond}) {
      OutputFile f(dir, std::string("surface_") + name + "_a" +
                            std::to_string(static_cast<int>(p) + 1) + ".csv");
      WriteSurfaceCsv(f.stream(), ExportPolicySurface(*policy, p));
    }
    OutputFile f(dir, std::string("policy_") + name + ".csv");
    WritePolicyCsv(f.stream(), *policy);
  }
}

int CmdSolve(const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = LoadWithOverrides(flags);
  const SnrGrid& grid = SolveGrid(cfg);
  const fs::path dir = PrepareOutputDir(cfg, flags);

  const CournotSolution top =
      CournotSolve(cfg.cost, grid, Direction::kFromTop, flags.threads);
  const CournotSolution bottom =
      CournotSolve(cfg.cost, grid, Direction::kFromBottom, flags.threads);
  ExtremalEquilibria eq{top.policy, bottom.policy};
  const std::int64_t plain_evaluations = top.evaluations + bottom.evaluations;

  std::optional<AcceleratedSolution> accelerated;
  if (flags.accelerate) {
    AccelerationOptions options;
    // Warm starts rely on the error cost being submodular in (gamma, a).
    options.use_warm_start = cfg.cost.variant() == ErrorCost::kPowerProxy;
    accelerated = SolveAccelerated(cfg.cost, grid, options);
    if (!(accelerated->equilibria.largest == eq.largest) ||
        !(accelerated->equilibria.smallest == eq.smallest)) {
      throw std::logic_error("accelerated solution differs from plain solve");
    }
    eq = accelerated->equilibria;
  }

  WriteSurfaces(dir, eq);
  {
    OutputFile f(dir, "traces.csv");
    f.stream() << "i1,i2,gamma1,gamma2,iterations_from_top,"
                  "iterations_from_bottom\n";
    for (std::size_t k = 0; k < grid.num_points(); ++k) {
      const GridIndex idx = grid.Unflat(k);
      const SnrVector snr = grid.At(idx);
      f.stream() << idx.i1 << ',' << idx.i2 << ',' << FormatReal(snr.gamma1)
                 << ',' << FormatReal(snr.gamma2) << ','
                 << top.traces[k].converged_at << ','
                 << bottom.traces[k].converged_at << '\n';
    }
  }
  {
    OutputFile f(dir, "solve_stats.csv");
    f.stream() << "metric,value\n"
               << "grid_points," << grid.num_points() << '\n'
               << "plain_evaluations," << plain_evaluations << '\n';
    if (accelerated) {
      f.stream() << "accelerated_evaluations," << accelerated->evaluations
                 << '\n'
                 << "points_mirrored," << accelerated->points_mirrored << '\n';
    }
  }
  out << "solved " << grid.num_points() << " grid points ("
      << ErrorCostName(cfg.cost.variant()) << ", w=" << cfg.cost.weight()
      << ", a_max=" << cfg.a_max << ") into " << dir.string() << '\n';
  return kExitOk;
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kEither:
      return "either";
  }
  return "unknown";
}

int CmdVerify(const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = LoadWithOverrides(flags);
  const SnrGrid& grid = SolveGrid(cfg);
  const fs::path dir = PrepareOutputDir(cfg, flags);
  const ExtremalEquilibria eq = SolveExtremal(cfg.cost, grid, flags.threads);

  const PropertyReport reports[] = {
      CheckSubmodularity(cfg.cost, grid),
      CheckPareto(cfg.cost, eq),
      CheckSymmetry(eq),
      CheckMonotonicity(eq),
      CheckErrorCostSubmodularity(cfg.cost, grid),
  };

  bool all_match = true;
  OutputFile summary(dir, "verify.csv");
  OutputFile details(dir, "violations.csv");
  summary.stream() << "property,applicable,holds,expected,matches,violations\n";
  details.stream() << "property,where,margin\n";
  for (const PropertyReport& r : reports) {
    const Verdict expected = ExpectedVerdict(cfg, r.property);
    bool matches = true;
    if (r.applicable) {
      matches = expected == Verdict::kEither ||
                (expected == Verdict::kHolds) == r.holds;
    }
    all_match = all_match && matches;
    summary.stream() << PropertyName(r.property) << ','
                     << (r.applicable ? "true" : "false") << ','
                     << (r.holds ? "true" : "false") << ','
                     << VerdictName(expected) << ','
                     << (matches ? "true" : "false") << ','
                     << r.violations.size() << '\n';
    for (const Violation& v : r.violations) {
      details.stream() << PropertyName(r.property) << ','
                       << QuoteCsvField(v.where) << ',' << FormatReal(v.margin)
                       << '\n';
    }
    out << PropertyName(r.property) << ": "
        << (!r.applicable ? "n/a" : r.holds ? "holds" : "violated") << " ("
        << r.violations.size() << " violations, expected "
        << VerdictName(expected) << ")" << (matches ? "" : "  UNEXPECTED")
        << '\n';
  }
  return all_match ? kExitOk : kExitUnexpectedVerdict;
}

int CmdSimulate(const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = LoadWithOverrides(flags);
  const SnrGrid& grid = SolveGrid(cfg);

  const StrategySpec* spec = &cfg.strategies.front();
  if (!flags.strategy.empty()) {
    spec = nullptr;
    for (const StrategySpec& s : cfg.strategies) {
      if (s.name == flags.strategy) spec = &s;
    }
    if (spec == nullptr) {
      throw UsageError("--strategy: no strategy named '" + flags.strategy + "'");
    }
  }
  const fs::path dir = PrepareOutputDir(cfg, flags);

  std::optional<ExtremalEquilibria> eq;
  if (spec->needs_equilibria()) {
    eq = SolveExtremal(spec->model, grid, flags.threads);
  }
  SimulationOptions options;
  options.symbols = cfg.symbols;
  options.seed = cfg.seed;
  options.threads = flags.threads;
  const SnrVector mean = EstimateMeanSnr(cfg.channel, cfg.calibration_samples,
                                         DeriveSeed(cfg.seed, 1));
  options.avg_snr_db = RatioToDb(0.5 * (mean.gamma1 + mean.gamma2));
  const SimulationReport report = RunSimulation(
      *spec, cfg.channel, grid, options, eq ? &*eq : nullptr);

  OutputFile f(dir, "simulate.csv");
  WriteReportsCsv(f.stream(), {report});
  out << spec->name << ": ber=" << FormatReal(report.ber)
      << " bits_per_symbol=" << FormatReal(report.bits_per_symbol)
      << " broadcast_rate=" << FormatReal(report.broadcast_rate) << '\n';
  return kExitOk;
}

int CmdSweep(const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = LoadWithOverrides(flags);
  const fs::path dir = PrepareOutputDir(cfg, flags);

  SweepOptions options;
  options.symbols = cfg.symbols;
  options.seed = cfg.seed;
  options.threads = flags.threads;
  options.calibration_samples = cfg.calibration_samples;
  options.grid = cfg.sweep_grid.fixed;
  options.auto_levels = cfg.sweep_grid.auto_levels;
  const SweepResult result =
      RunSweep(cfg.strategies, cfg.channel, cfg.sweep_avg_snr_db, options);

  {
    OutputFile f(dir, "sweep.csv");
    WriteReportsCsv(f.stream(), result.reports);
  }
  {
    OutputFile f(dir, "sweep_points.csv");
    f.stream() << "avg_snr_db,mean_gain1,mean_gain2,levels1,levels2,"
                  "level_min,level_max\n";
    for (const SweepPoint& p : result.points) {
      f.stream() << FormatReal(p.avg_snr_db) << ','
                 << FormatReal(p.params.mean_gain1) << ','
                 << FormatReal(p.params.mean_gain2) << ',' << p.grid.size1()
                 << ',' << p.grid.size2() << ','
                 << FormatReal(std::min(p.grid.levels1().front(),
                                        p.grid.levels2().front()))
                 << ','
                 << FormatReal(std::max(p.grid.levels1().back(),
                                        p.grid.levels2().back()))
                 << '\n';
    }
  }
  out << "swept " << cfg.strategies.size() << " strategies over "
      << result.points.size() << " average SNR points into " << dir.string()
      << '\n';
  return kExitOk;
}

}  // namespace

Verdict ExpectedVerdict(const RunConfig& config, Property property) {
  if (config.cost.variant() == ErrorCost::kPowerProxy) return Verdict::kHolds;
  if (property != Property::kMonotonicity &&
      property != Property::kErrorCostSubmodularity) {
    return Verdict::kHolds;
  }
  const bool reference_case = config.cost.weight() == 50.0 &&
                              config.a_max == 9 && config.grid.fixed &&
                              *config.grid.fixed == SnrGrid(DefaultLevels());
  return reference_case ? Verdict::kViolated : Verdict::kEither;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Extremal equilibria of the two-user relay rate game"};
  app.name("relaygame");
  app.require_subcommand(1);

  CommonFlags flags;
  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "YAML run configuration")
        ->required();
    sub->add_option("--out", flags.out_dir, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads")
        ->check(CLI::Range(1, 1024));
  };
  auto add_seed = [&flags](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&flags](std::uint64_t seed) {
          flags.seed = seed;
          flags.seed_given = true;
        },
        "Master seed, overrides the config");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve both extremal policies");
  add_common(solve);
  add_seed(solve);
  solve->add_flag("--accelerate", flags.accelerate,
                  "Also run the accelerated solver and report its savings");
  CLI::App* verify = app.add_subcommand("verify", "Check structural properties");
  add_common(verify);
  add_seed(verify);
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate one strategy");
  add_common(simulate);
  add_seed(simulate);
  simulate->add_option("--strategy", flags.strategy,
                       "Strategy name (default: first configured)");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep the average SNR");
  add_common(sweep);
  add_seed(sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*solve) return CmdSolve(flags, out);
    if (*verify) return CmdVerify(flags, out);
    if (*simulate) return CmdSimulate(flags, out);
    return CmdSweep(flags, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return RunCli(args, out, err);
}

}  // namespace relaygame
