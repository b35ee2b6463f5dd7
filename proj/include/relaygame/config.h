#ifndef RELAYGAME_CONFIG_H_
#define RELAYGAME_CONFIG_H_

// Run configuration for the command-line tool, read from YAML.
//
//   a_max: 9
//   cost: {variant: power_proxy, weight: 0.05, ber_constraint: 0.001}
//   grid: {levels: [0.1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]}
//   channel: {noise_relay: 1, power_relay: 1, ...}
//   seed: 1
//   output_dir: out
//   sweep:
//     avg_snr_db: [-6, -5, ..., 7]
//     symbols: 10000
//     grid: {auto: 100}
//   strategies:
//     - {name: SupG-Pr-smallest, kind: extremal_smallest,
//        cost: {variant: power_proxy, weight: 0.05}}
//
// A grid is one of {levels: [...]}, {levels1: [...], levels2: [...]},
// {count: N, min_db: x, max_db: y} (log-spaced) or, for sweeps only,
// {auto: N}. Omitted strategies default to the seven-strategy comparison;
// a strategy without `cost` inherits the top-level one.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaygame/channel.h"
#include "relaygame/game_core.h"
#include "relaygame/simulator.h"

namespace relaygame {

// Carries the dotted path of the offending field, e.g. "cost.weight".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GridConfig {
  std::optional<SnrGrid> fixed;  // explicit or dB range
  int auto_levels = 0;           // > 0 selects the per-run auto grid
};

struct RunConfig {
  int a_max = 9;
  CostModel cost = CostModel::PowerProxy(0.05);
  GridConfig grid;
  ChannelParams channel;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  std::vector<double> sweep_avg_snr_db;
  std::int64_t symbols = 10000;
  int calibration_samples = 200000;
  GridConfig sweep_grid;

  std::vector<StrategySpec> strategies;
};

// {0.1, 1, 2, ..., 10}
std::vector<double> DefaultLevels();
// The seven-strategy comparison: extremal largest/smallest and single-agent
// AM under the BER bound (w = 50) and the power proxy (w = 0.05), plus fixed
// 1-bit transmission accounted with `cost`.
std::vector<StrategySpec> DefaultStrategies(int a_max, const CostModel& cost);

// Throws ConfigError.
RunConfig ParseConfig(const std::string& yaml_text);
RunConfig LoadConfig(const std::string& path);

}  // namespace relaygame

#endif  // RELAYGAME_CONFIG_H_
