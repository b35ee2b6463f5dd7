#ifndef RELAYGAME_SIMULATOR_H_
#define RELAYGAME_SIMULATOR_H_

// Monte Carlo evaluation of transmission policies over symbol durations.
//
// Each symbol: draw Rayleigh fading, compute the effective SNRs, quantize to
// the grid, look up (a_1, a_2), then account bits, relay broadcasts, sampled
// bit errors and the incurred costs. Errors and costs are evaluated at the
// quantized SNR level, so per-point properties of the policies carry over to
// every sample path.
//
// The symbol budget is cut into fixed blocks with seeds derived from the
// master seed; blocks are merged in order, so the thread count never changes
// the result.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaygame/channel.h"
#include "relaygame/game_core.h"
#include "relaygame/solver.h"

namespace relaygame {

inline constexpr int kSymbolsPerBlock = 1024;

enum class StrategyKind {
  kExtremalLargest,
  kExtremalSmallest,
  kSingleAgentAm,
  kFixedRate,
};

std::string_view StrategyKindName(StrategyKind kind);
StrategyKind ParseStrategyKind(std::string_view name);

struct StrategySpec {
  std::string name;
  StrategyKind kind = StrategyKind::kFixedRate;
  // Drives the policy for the adaptive kinds; used for cost accounting by all.
  CostModel model = CostModel::PowerProxy(0.05);
  int fixed_bits = 1;  // kFixedRate only

  // Throws std::invalid_argument.
  void Validate() const;
  bool needs_equilibria() const {
    return kind == StrategyKind::kExtremalLargest ||
           kind == StrategyKind::kExtremalSmallest;
  }
};

// Tabulates the strategy on the grid. Equilibrium kinds need `equilibria`
// solved on the same grid, otherwise std::invalid_argument.
Policy BuildStrategyPolicy(const StrategySpec& spec, const SnrGrid& grid,
                           const ExtremalEquilibria* equilibria);

// Exponential BER bound as a per-bit error law, capped at 0.5; 0 for a = 0.
double BitErrorProbability(double gamma, int bits);

struct SimulationReport {
  std::string strategy;
  double avg_snr_db = 0.0;
  double ber = 0.0;
  double bits_per_symbol = 0.0;
  double broadcast_rate = 0.0;
  double avg_cost1 = 0.0;
  double avg_cost2 = 0.0;
  std::int64_t symbols = 0;
  std::int64_t total_bits_sent = 0;
  std::int64_t total_bit_errors = 0;
  std::int64_t broadcasts = 0;
  // Analytic error count sum(a_i p_i) over the same draws, and its binomial
  // variance sum(a_i p_i (1 - p_i)).
  double expected_bit_errors = 0.0;
  double bit_error_variance = 0.0;
  std::uint64_t seed = 0;
};

struct SimulationOptions {
  std::int64_t symbols = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  double avg_snr_db = 0.0;  // label only
};

SimulationReport RunSimulation(const StrategySpec& spec,
                               const ChannelParams& params,
                               const SnrGrid& grid,
                               const SimulationOptions& options,
                               const ExtremalEquilibria* equilibria = nullptr);

struct SymbolRecord {
  GridIndex point;
  ActionProfile actions;
  int bit_errors = 0;
  double cost1 = 0.0;
  double cost2 = 0.0;
};

// Per-symbol view of RunSimulation, same draws and same ordering.
std::vector<SymbolRecord> RecordSymbols(
    const StrategySpec& spec, const ChannelParams& params, const SnrGrid& grid,
    const SimulationOptions& options,
    const ExtremalEquilibria* equilibria = nullptr);

// Running sums of one block of symbols.
struct BlockTotals {
  std::int64_t symbols = 0;
  std::int64_t bits = 0;
  std::int64_t errors = 0;
  std::int64_t broadcasts = 0;
  double cost1 = 0.0;
  double cost2 = 0.0;
  double expected_errors = 0.0;
  double error_variance = 0.0;
};

std::int64_t NumBlocks(std::int64_t symbols);
// Simulates block `block` of the budget; independent of every other block.
BlockTotals SimulateBlock(const Policy& policy, const CostModel& cost_model,
                          const ChannelParams& params, std::int64_t symbols,
                          std::uint64_t seed, std::int64_t block);

// Per-run grid: `count` levels min + k (max - min) / count, k = 0..count-1,
// from the empirical SNR range of `draws` fading samples.
SnrGrid AutoGrid(const ChannelParams& params, int count, int draws,
                 std::uint64_t seed);

struct SweepOptions {
  std::int64_t symbols = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  int calibration_samples = 200000;
  // Explicit grid for every point, or an auto grid of `auto_levels` levels
  // built from a pre-pass of `symbols` draws.
  std::optional<SnrGrid> grid;
  int auto_levels = 100;
};

struct SweepPoint {
  double avg_snr_db = 0.0;
  ChannelParams params;
  SnrGrid grid;
};

struct SweepResult {
  // Strategy order as given, then ascending average SNR.
  std::vector<SimulationReport> reports;
  std::vector<SweepPoint> points;  // ascending average SNR
};

// Every strategy sees the same fading sequence at a given average SNR.
SweepResult RunSweep(const std::vector<StrategySpec>& specs,
                     const ChannelParams& base_params,
                     std::vector<double> avg_snr_db,
                     const SweepOptions& options);

}  // namespace relaygame

#endif  // RELAYGAME_SIMULATOR_H_
