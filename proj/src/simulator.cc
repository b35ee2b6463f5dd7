#include "relaygame/simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "parallel.h"

namespace relaygame {
namespace {

std::uint64_t FadingStream(std::int64_t block) {
  return 2 * static_cast<std::uint64_t>(block);
}
std::uint64_t ErrorStream(std::int64_t block) {
  return 2 * static_cast<std::uint64_t>(block) + 1;
}

// Calls fn(point, actions, errors, p1, p2, cost1, cost2) for every symbol of
// the block, in order.
template <typename Fn>
void ForEachSymbol(const Policy& policy, const CostModel& cost_model,
                   const ChannelParams& params, std::int64_t symbols,
                   std::uint64_t seed, std::int64_t block, Fn&& fn) {
  const SnrGrid& grid = policy.grid();
  const std::int64_t begin = block * kSymbolsPerBlock;
  const std::int64_t end = std::min(symbols, begin + kSymbolsPerBlock);
  Rng fading(DeriveSeed(seed, FadingStream(block)));
  Rng errors(DeriveSeed(seed, ErrorStream(block)));
  for (std::int64_t s = begin; s < end; ++s) {
    const FadingDraw draw =
        DrawFading(params.mean_gain1, params.mean_gain2, fading);
    const GridIndex idx = QuantizeToGrid(grid, EffectiveSnr(params, draw));
    const SnrVector level = grid.At(idx);
    const ActionProfile& a = policy.at(idx);
    const double p1 = BitErrorProbability(level.gamma1, a.a1);
    const double p2 = BitErrorProbability(level.gamma2, a.a2);
    int bit_errors = 0;
    for (int b = 0; b < a.a1; ++b) bit_errors += errors.Bernoulli(p1) ? 1 : 0;
    for (int b = 0; b < a.a2; ++b) bit_errors += errors.Bernoulli(p2) ? 1 : 0;
    fn(idx, a, bit_errors, p1, p2,
       CostTotal(cost_model, level.gamma1, a.a1, a.a2),
       CostTotal(cost_model, level.gamma2, a.a2, a.a1));
  }
}

void CheckBudget(std::int64_t symbols) {
  if (symbols < 1) throw std::invalid_argument("symbols must be >= 1");
}

}  // namespace

std::string_view StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kExtremalLargest:
      return "extremal_largest";
    case StrategyKind::kExtremalSmallest:
      return "extremal_smallest";
    case StrategyKind::kSingleAgentAm:
      return "single_agent_am";
    case StrategyKind::kFixedRate:
      return "fixed_rate";
  }
  return "unknown";
}

StrategyKind ParseStrategyKind(std::string_view name) {
  for (StrategyKind kind :
       {StrategyKind::kExtremalLargest, StrategyKind::kExtremalSmallest,
        StrategyKind::kSingleAgentAm, StrategyKind::kFixedRate}) {
    if (StrategyKindName(kind) == name) return kind;
  }
  throw std::invalid_argument(
      "unknown strategy kind '" + std::string(name) +
      "' (expected extremal_largest, extremal_smallest, single_agent_am or "
      "fixed_rate)");
}

void StrategySpec::Validate() const {
  if (name.empty()) throw std::invalid_argument("strategy name is empty");
  if (kind == StrategyKind::kFixedRate &&
      (fixed_bits < 1 || fixed_bits > model.a_max())) {
    throw std::invalid_argument("fixed_bits must be in [1, a_max]");
  }
}

Policy BuildStrategyPolicy(const StrategySpec& spec, const SnrGrid& grid,
                           const ExtremalEquilibria* equilibria) {
  spec.Validate();
  switch (spec.kind) {
    case StrategyKind::kExtremalLargest:
    case StrategyKind::kExtremalSmallest: {
      if (equilibria == nullptr) {
        throw std::invalid_argument("strategy '" + spec.name +
                                    "' needs pre-solved equilibria");
      }
      const Policy& policy = spec.kind == StrategyKind::kExtremalLargest
                                 ? equilibria->largest
                                 : equilibria->smallest;
      if (!(policy.grid() == grid)) {
        throw std::invalid_argument("equilibria for '" + spec.name +
                                    "' were solved on a different grid");
      }
      return policy;
    }
    case StrategyKind::kSingleAgentAm: {
      std::vector<int> best1(grid.size1());
      std::vector<int> best2(grid.size2());
      for (std::size_t i = 0; i < grid.size1(); ++i) {
        best1[i] = SingleAgentBest(spec.model, grid.levels1()[i]);
      }
      for (std::size_t j = 0; j < grid.size2(); ++j) {
        best2[j] = SingleAgentBest(spec.model, grid.levels2()[j]);
      }
      Policy policy(grid);
      for (std::size_t i = 0; i < grid.size1(); ++i) {
        for (std::size_t j = 0; j < grid.size2(); ++j) {
          policy.at({i, j}) = {best1[i], best2[j]};
        }
      }
      return policy;
    }
    case StrategyKind::kFixedRate: {
      Policy policy(grid);
      std::fill(policy.table().begin(), policy.table().end(),
                ActionProfile{spec.fixed_bits, spec.fixed_bits});
      return policy;
    }
  }
  throw std::logic_error("unhandled strategy kind");
}

double BitErrorProbability(double gamma, int bits) {
  if (bits <= 0) return 0.0;
  const double p = 0.2 * std::exp(-1.5 * gamma / (std::ldexp(1.0, bits) - 1.0));
  return std::min(p, 0.5);
}

std::int64_t NumBlocks(std::int64_t symbols) {
  return (symbols + kSymbolsPerBlock - 1) / kSymbolsPerBlock;
}

BlockTotals SimulateBlock(const Policy& policy, const CostModel& cost_model,
                          const ChannelParams& params, std::int64_t symbols,
                          std::uint64_t seed, std::int64_t block) {
  BlockTotals t;
  ForEachSymbol(policy, cost_model, params, symbols, seed, block,
                [&](GridIndex, const ActionProfile& a, int errors, double p1,
                    double p2, double c1, double c2) {
                  ++t.symbols;
                  t.bits += a.a1 + a.a2;
                  t.errors += errors;
                  if (a.a1 + a.a2 > 0) ++t.broadcasts;
                  t.cost1 += c1;
                  t.cost2 += c2;
                  t.expected_errors += a.a1 * p1 + a.a2 * p2;
                  t.error_variance +=
                      a.a1 * p1 * (1.0 - p1) + a.a2 * p2 * (1.0 - p2);
                });
  return t;
}

SimulationReport RunSimulation(const StrategySpec& spec,
                               const ChannelParams& params,
                               const SnrGrid& grid,
                               const SimulationOptions& options,
                               const ExtremalEquilibria* equilibria) {
  CheckBudget(options.symbols);
  params.Validate();
  const Policy policy = BuildStrategyPolicy(spec, grid, equilibria);

  const std::int64_t blocks = NumBlocks(options.symbols);
  std::vector<BlockTotals> partial(static_cast<std::size_t>(blocks));
  internal::ParallelFor(partial.size(), options.threads, [&](std::size_t b) {
    partial[b] = SimulateBlock(policy, spec.model, params, options.symbols,
                               options.seed, static_cast<std::int64_t>(b));
  });

  BlockTotals total;
  for (const BlockTotals& t : partial) {
    total.symbols += t.symbols;
    total.bits += t.bits;
    total.errors += t.errors;
    total.broadcasts += t.broadcasts;
    total.cost1 += t.cost1;
    total.cost2 += t.cost2;
    total.expected_errors += t.expected_errors;
    total.error_variance += t.error_variance;
  }

  SimulationReport r;
  r.strategy = spec.name;
  r.avg_snr_db = options.avg_snr_db;
  r.symbols = total.symbols;
  r.total_bits_sent = total.bits;
  r.total_bit_errors = total.errors;
  r.broadcasts = total.broadcasts;
  const double n = static_cast<double>(total.symbols);
  r.ber = static_cast<double>(total.errors) /
          static_cast<double>(std::max<std::int64_t>(total.bits, 1));
  r.bits_per_symbol = static_cast<double>(total.bits) / n;
  r.broadcast_rate = static_cast<double>(total.broadcasts) / n;
  r.avg_cost1 = total.cost1 / n;
  r.avg_cost2 = total.cost2 / n;
  r.expected_bit_errors = total.expected_errors;
  r.bit_error_variance = total.error_variance;
  r.seed = options.seed;
  return r;
}

std::vector<SymbolRecord> RecordSymbols(const StrategySpec& spec,
                                        const ChannelParams& params,
                                        const SnrGrid& grid,
                                        const SimulationOptions& options,
                                        const ExtremalEquilibria* equilibria) {
  CheckBudget(options.symbols);
  params.Validate();
  const Policy policy = BuildStrategyPolicy(spec, grid, equilibria);
  std::vector<SymbolRecord> out;
  out.reserve(static_cast<std::size_t>(options.symbols));
  for (std::int64_t b = 0; b < NumBlocks(options.symbols); ++b) {
    ForEachSymbol(policy, spec.model, params, options.symbols, options.seed, b,
                  [&](GridIndex idx, const ActionProfile& a, int errors,
                      double, double, double c1, double c2) {
                    out.push_back({idx, a, errors, c1, c2});
                  });
  }
  return out;
}

SnrGrid AutoGrid(const ChannelParams& params, int count, int draws,
                 std::uint64_t seed) {
  params.Validate();
  if (count < 2) throw std::invalid_argument("auto grid needs >= 2 levels");
  if (draws < 2) throw std::invalid_argument("auto grid needs >= 2 draws");
  Rng rng(seed);
  double lo1 = std::numeric_limits<double>::infinity(), hi1 = 0.0;
  double lo2 = lo1, hi2 = 0.0;
  for (int k = 0; k < draws; ++k) {
    const SnrVector snr = EffectiveSnr(
        params, DrawFading(params.mean_gain1, params.mean_gain2, rng));
    lo1 = std::min(lo1, snr.gamma1);
    hi1 = std::max(hi1, snr.gamma1);
    lo2 = std::min(lo2, snr.gamma2);
    hi2 = std::max(hi2, snr.gamma2);
  }
  auto levels = [count](double lo, double hi) {
    if (!(hi > lo) || !(lo > 0.0)) {
      throw std::runtime_error("degenerate SNR range for the auto grid");
    }
    const double step = (hi - lo) / count;
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out[k] = lo + k * step;
    return out;
  };
  return SnrGrid(levels(lo1, hi1), levels(lo2, hi2));
}

SweepResult RunSweep(const std::vector<StrategySpec>& specs,
                     const ChannelParams& base_params,
                     std::vector<double> avg_snr_db,
                     const SweepOptions& options) {
  if (specs.empty()) throw std::invalid_argument("sweep has no strategies");
  if (avg_snr_db.empty()) throw std::invalid_argument("sweep has no SNR points");
  CheckBudget(options.symbols);
  for (const StrategySpec& s : specs) s.Validate();
  std::sort(avg_snr_db.begin(), avg_snr_db.end());

  SweepResult result;
  // [point][spec]
  std::vector<std::vector<SimulationReport>> by_point;
  for (double db : avg_snr_db) {
    const std::uint64_t point_seed =
        DeriveSeed(options.seed, std::bit_cast<std::uint64_t>(db));
    const ChannelParams params = CalibrateAverageSnr(
        base_params, db, options.calibration_samples, DeriveSeed(point_seed, 1));
    const SnrGrid grid =
        options.grid ? *options.grid
                     : AutoGrid(params, options.auto_levels,
                                static_cast<int>(options.symbols),
                                DeriveSeed(point_seed, 2));

    std::vector<std::pair<CostModel, ExtremalEquilibria>> solved;
    auto equilibria_for = [&](const CostModel& model) -> const ExtremalEquilibria& {
      for (const auto& [m, eq] : solved) {
        if (m == model) return eq;
      }
      solved.emplace_back(model, SolveExtremal(model, grid, options.threads));
      return solved.back().second;
    };

    SimulationOptions sim;
    sim.symbols = options.symbols;
    sim.seed = DeriveSeed(point_seed, 3);
    sim.threads = options.threads;
    sim.avg_snr_db = db;
    std::vector<SimulationReport> row;
    for (const StrategySpec& spec : specs) {
      const ExtremalEquilibria* eq =
          spec.needs_equilibria() ? &equilibria_for(spec.model) : nullptr;
      SimulationReport report = RunSimulation(spec, params, grid, sim, eq);
      report.seed = options.seed;
      row.push_back(std::move(report));
    }
    by_point.push_back(std::move(row));
    result.points.push_back({db, params, grid});
  }
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (const auto& row : by_point) result.reports.push_back(row[s]);
  }
  return result;
}

}  // namespace relaygame
