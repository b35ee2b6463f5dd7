#include "relaygame/config.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace relaygame {
namespace {

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void CheckKeys(const YAML::Node& node, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) throw ConfigError(path.empty() ? "<root>" : path, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(Join(path, key), "unknown key");
    }
  }
}

template <typename T>
T As(const YAML::Node& node, const std::string& path, const char* what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path, std::string("expected ") + what);
  }
}

std::vector<double> RealList(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) throw ConfigError(path, "expected a list of reals");
  std::vector<double> out;
  for (std::size_t k = 0; k < node.size(); ++k) {
    out.push_back(As<double>(node[k], path + "[" + std::to_string(k) + "]",
                             "a real number"));
  }
  return out;
}

SnrGrid MakeGrid(std::vector<double> l1, std::vector<double> l2,
                 const std::string& path) {
  try {
    return SnrGrid(std::move(l1), std::move(l2));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

GridConfig ParseGrid(const YAML::Node& node, const std::string& path,
                     bool allow_auto) {
  CheckKeys(node, path,
            {"levels", "levels1", "levels2", "count", "min_db", "max_db", "auto"});
  GridConfig grid;
  if (node["auto"]) {
    if (!allow_auto) {
      throw ConfigError(Join(path, "auto"),
                        "auto grids need a channel and are only valid under sweep");
    }
    grid.auto_levels = As<int>(node["auto"], Join(path, "auto"), "an integer");
    if (grid.auto_levels < 2) {
      throw ConfigError(Join(path, "auto"), "needs at least 2 levels");
    }
    return grid;
  }
  if (node["levels"]) {
    auto levels = RealList(node["levels"], Join(path, "levels"));
    grid.fixed = MakeGrid(levels, levels, Join(path, "levels"));
    return grid;
  }
  if (node["levels1"] || node["levels2"]) {
    if (!node["levels1"] || !node["levels2"]) {
      throw ConfigError(path, "levels1 and levels2 must be given together");
    }
    grid.fixed = MakeGrid(RealList(node["levels1"], Join(path, "levels1")),
                          RealList(node["levels2"], Join(path, "levels2")),
                          path);
    return grid;
  }
  if (node["count"]) {
    const int count = As<int>(node["count"], Join(path, "count"), "an integer");
    if (count < 1) throw ConfigError(Join(path, "count"), "must be >= 1");
    if (!node["min_db"] || !node["max_db"]) {
      throw ConfigError(path, "count needs min_db and max_db");
    }
    const double lo = As<double>(node["min_db"], Join(path, "min_db"), "a real");
    const double hi = As<double>(node["max_db"], Join(path, "max_db"), "a real");
    if (count > 1 && !(hi > lo)) {
      throw ConfigError(Join(path, "max_db"), "must exceed min_db");
    }
    std::vector<double> levels;
    for (int k = 0; k < count; ++k) {
      const double db = count == 1 ? lo : lo + (hi - lo) * k / (count - 1);
      levels.push_back(DbToRatio(db));
    }
    grid.fixed = MakeGrid(levels, levels, path);
    return grid;
  }
  throw ConfigError(path, "grid has no levels");
}

CostModel ParseCost(const YAML::Node& node, const std::string& path, int a_max,
                    const CostModel* inherit) {
  CheckKeys(node, path, {"variant", "weight", "ber_constraint"});
  ErrorCost variant = inherit ? inherit->variant() : ErrorCost::kPowerProxy;
  double weight = inherit ? inherit->weight() : 0.05;
  double pb0 = inherit ? inherit->ber_constraint() : 1e-3;
  if (node["variant"]) {
    const std::string name =
        As<std::string>(node["variant"], Join(path, "variant"), "a string");
    try {
      variant = ParseErrorCost(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(Join(path, "variant"), e.what());
    }
  }
  if (node["weight"]) {
    weight = As<double>(node["weight"], Join(path, "weight"), "a real");
    if (!(weight > 0.0)) throw ConfigError(Join(path, "weight"), "must be > 0");
  }
  if (node["ber_constraint"]) {
    pb0 = As<double>(node["ber_constraint"], Join(path, "ber_constraint"),
                     "a real");
    if (!(pb0 > 0.0 && pb0 <= 0.2)) {
      throw ConfigError(Join(path, "ber_constraint"), "must be in (0, 0.2]");
    }
  }
  try {
    return CostModel(variant, weight, a_max, pb0);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

ChannelParams ParseChannel(const YAML::Node& node, const std::string& path) {
  CheckKeys(node, path,
            {"noise_relay", "noise_user1", "noise_user2", "power_user1",
             "power_user2", "power_relay", "mean_gain1", "mean_gain2"});
  ChannelParams p;
  const std::pair<const char*, double*> fields[] = {
      {"noise_relay", &p.noise_relay}, {"noise_user1", &p.noise_user1},
      {"noise_user2", &p.noise_user2}, {"power_user1", &p.power_user1},
      {"power_user2", &p.power_user2}, {"power_relay", &p.power_relay},
      {"mean_gain1", &p.mean_gain1},   {"mean_gain2", &p.mean_gain2},
  };
  for (const auto& [key, target] : fields) {
    if (!node[key]) continue;
    *target = As<double>(node[key], Join(path, key), "a real");
    if (!(*target > 0.0)) throw ConfigError(Join(path, key), "must be > 0");
  }
  return p;
}

StrategySpec ParseStrategy(const YAML::Node& node, const std::string& path,
                           int a_max, const CostModel& cost) {
  CheckKeys(node, path, {"name", "kind", "cost", "fixed_bits"});
  StrategySpec spec;
  if (!node["name"]) throw ConfigError(Join(path, "name"), "missing");
  spec.name = As<std::string>(node["name"], Join(path, "name"), "a string");
  if (spec.name.empty() || spec.name.find_first_of(",\n\r") != std::string::npos) {
    throw ConfigError(Join(path, "name"), "must be nonempty without commas");
  }
  if (!node["kind"]) throw ConfigError(Join(path, "kind"), "missing");
  try {
    spec.kind = ParseStrategyKind(
        As<std::string>(node["kind"], Join(path, "kind"), "a string"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Join(path, "kind"), e.what());
  }
  spec.model = node["cost"] ? ParseCost(node["cost"], Join(path, "cost"), a_max, &cost)
                            : cost;
  if (node["fixed_bits"]) {
    spec.fixed_bits =
        As<int>(node["fixed_bits"], Join(path, "fixed_bits"), "an integer");
  }
  try {
    spec.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

}  // namespace

std::vector<double> DefaultLevels() {
  std::vector<double> levels = {0.1};
  for (int k = 1; k <= 10; ++k) levels.push_back(k);
  return levels;
}

std::vector<StrategySpec> DefaultStrategies(int a_max, const CostModel& cost) {
  const CostModel ber = CostModel::BerBound(50.0, a_max);
  const CostModel pr = CostModel::PowerProxy(0.05, a_max);
  return {
      {"SupG-BER-largest", StrategyKind::kExtremalLargest, ber, 1},
      {"SupG-BER-smallest", StrategyKind::kExtremalSmallest, ber, 1},
      {"AM-BER", StrategyKind::kSingleAgentAm, ber, 1},
      {"SupG-Pr-largest", StrategyKind::kExtremalLargest, pr, 1},
      {"SupG-Pr-smallest", StrategyKind::kExtremalSmallest, pr, 1},
      {"AM-Pr", StrategyKind::kSingleAgentAm, pr, 1},
      {"2-QAM", StrategyKind::kFixedRate, cost, 1},
  };
}

RunConfig ParseConfig(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("YAML parse error: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  CheckKeys(root, "",
            {"a_max", "cost", "grid", "channel", "seed", "output_dir", "sweep",
             "strategies"});

  RunConfig cfg;
  if (root["a_max"]) {
    cfg.a_max = As<int>(root["a_max"], "a_max", "an integer");
    if (cfg.a_max < 1 || cfg.a_max > 30) {
      throw ConfigError("a_max", "must be in [1, 30]");
    }
  }
  cfg.cost = root["cost"] ? ParseCost(root["cost"], "cost", cfg.a_max, nullptr)
                          : CostModel::PowerProxy(0.05, cfg.a_max);
  cfg.grid = root["grid"] ? ParseGrid(root["grid"], "grid", false)
                          : GridConfig{SnrGrid(DefaultLevels()), 0};
  if (root["channel"]) cfg.channel = ParseChannel(root["channel"], "channel");
  if (root["seed"]) {
    cfg.seed = As<std::uint64_t>(root["seed"], "seed", "a nonnegative integer");
  }
  if (root["output_dir"]) {
    cfg.output_dir = As<std::string>(root["output_dir"], "output_dir", "a string");
  }

  for (int db = -6; db <= 7; ++db) cfg.sweep_avg_snr_db.push_back(db);
  cfg.sweep_grid.auto_levels = 100;
  if (const YAML::Node sweep = root["sweep"]) {
    CheckKeys(sweep, "sweep",
              {"avg_snr_db", "symbols", "calibration_samples", "grid"});
    if (sweep["avg_snr_db"]) {
      cfg.sweep_avg_snr_db = RealList(sweep["avg_snr_db"], "sweep.avg_snr_db");
      if (cfg.sweep_avg_snr_db.empty()) {
        throw ConfigError("sweep.avg_snr_db", "must not be empty");
      }
    }
    if (sweep["symbols"]) {
      cfg.symbols = As<std::int64_t>(sweep["symbols"], "sweep.symbols", "an integer");
      if (cfg.symbols < 1) throw ConfigError("sweep.symbols", "must be >= 1");
    }
    if (sweep["calibration_samples"]) {
      cfg.calibration_samples = As<int>(sweep["calibration_samples"],
                                        "sweep.calibration_samples", "an integer");
      if (cfg.calibration_samples < 10000) {
        throw ConfigError("sweep.calibration_samples", "must be >= 10000");
      }
    }
    if (sweep["grid"]) cfg.sweep_grid = ParseGrid(sweep["grid"], "sweep.grid", true);
  }

  if (const YAML::Node list = root["strategies"]) {
    if (!list.IsSequence() || list.size() == 0) {
      throw ConfigError("strategies", "expected a nonempty list");
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      cfg.strategies.push_back(ParseStrategy(
          list[k], "strategies[" + std::to_string(k) + "]", cfg.a_max, cfg.cost));
    }
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (cfg.strategies[i].name == cfg.strategies[j].name) {
          throw ConfigError("strategies[" + std::to_string(i) + "].name",
                            "duplicate strategy name");
        }
      }
    }
  } else {
    cfg.strategies = DefaultStrategies(cfg.a_max, cfg.cost);
  }
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

}  // namespace relaygame
