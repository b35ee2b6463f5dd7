#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "relaygame/config.h"
#include "relaygame/csv.h"
#include "relaygame/solver.h"

namespace relaygame {
namespace {

std::string ConfigErrorPath(const std::string& yaml) {
  try {
    ParseConfig(yaml);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST_CASE("reals round-trip through their text form") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5,
                   std::numeric_limits<double>::denorm_min()}) {
    CHECK(ParseReal(FormatReal(x)) == x);
  }
  CHECK(FormatReal(2.0) == "2");
  CHECK(FormatReal(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(ParseReal("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(ParseReal(""), std::invalid_argument);
  CHECK_THROWS_AS(ParseInteger("3.0"), std::invalid_argument);
}

TEST_CASE("csv line splitting and quoting") {
  CHECK(SplitCsvLine("a,,b\r") == std::vector<std::string>{"a", "", "b"});
  CHECK(QuoteCsvField("plain") == "plain");
  CHECK(QuoteCsvField("(1,2)") == "\"(1,2)\"");
  CHECK(QuoteCsvField("say \"hi\", ok") == "\"say \"\"hi\"\", ok\"");
}

TEST_CASE("policy and surface files round-trip") {
  const SnrGrid grid({0.1, 1, 2.5}, {1, 3, 7, 9});
  const ExtremalEquilibria eq = SolveExtremal(CostModel::PowerProxy(0.05), grid);
  std::stringstream policy_text;
  WritePolicyCsv(policy_text, eq.smallest);
  const Policy back = ReadPolicyCsv(policy_text);
  CHECK(back == eq.smallest);

  std::stringstream surface_text;
  const auto rows = ExportPolicySurface(eq.largest, Player::kSecond);
  WriteSurfaceCsv(surface_text, rows);
  CHECK(ReadSurfaceCsv(surface_text) == rows);

  std::stringstream bad("gamma1,gamma2,action\n1,2\n");
  CHECK_THROWS_AS(ReadSurfaceCsv(bad), std::invalid_argument);
  std::stringstream wrong_header("x,y\n");
  CHECK_THROWS_AS(ReadPolicyCsv(wrong_header), std::invalid_argument);
}

TEST_CASE("empty config yields the documented defaults") {
  const RunConfig cfg = ParseConfig("");
  CHECK(cfg.a_max == 9);
  CHECK(cfg.cost == CostModel::PowerProxy(0.05));
  REQUIRE(cfg.grid.fixed);
  CHECK(*cfg.grid.fixed == SnrGrid(DefaultLevels()));
  CHECK(cfg.symbols == 10000);
  CHECK(cfg.sweep_avg_snr_db.size() == 14);
  CHECK(cfg.sweep_avg_snr_db.front() == -6.0);
  CHECK(cfg.sweep_avg_snr_db.back() == 7.0);
  CHECK(cfg.sweep_grid.auto_levels == 100);
  REQUIRE(cfg.strategies.size() == 7);
  CHECK(cfg.strategies[4].name == "SupG-Pr-smallest");
  CHECK(cfg.strategies[6].kind == StrategyKind::kFixedRate);
}

TEST_CASE("grid forms") {
  const RunConfig db = ParseConfig("grid: {count: 3, min_db: 0, max_db: 10}");
  REQUIRE(db.grid.fixed);
  CHECK(db.grid.fixed->levels1()[0] == doctest::Approx(1.0));
  CHECK(db.grid.fixed->levels1()[1] == doctest::Approx(std::sqrt(10.0)));
  CHECK(db.grid.fixed->levels1()[2] == doctest::Approx(10.0));

  const RunConfig two = ParseConfig("grid: {levels1: [1, 2], levels2: [3]}");
  CHECK(two.grid.fixed->size1() == 2);
  CHECK(two.grid.fixed->size2() == 1);

  const RunConfig sweep = ParseConfig("sweep: {grid: {levels: [1, 2, 4]}}");
  REQUIRE(sweep.sweep_grid.fixed);
  CHECK(sweep.sweep_grid.auto_levels == 0);
}

TEST_CASE("strategies inherit the top-level cost and a_max") {
  const RunConfig cfg = ParseConfig(R"(
a_max: 5
cost: {variant: ber_bound, weight: 20}
strategies:
  - {name: eq, kind: extremal_largest}
  - {name: pr, kind: single_agent_am, cost: {variant: power_proxy, weight: 0.1}}
  - {name: fixed, kind: fixed_rate, fixed_bits: 3}
)");
  REQUIRE(cfg.strategies.size() == 3);
  CHECK(cfg.strategies[0].model == CostModel::BerBound(20.0, 5));
  CHECK(cfg.strategies[1].model == CostModel::PowerProxy(0.1, 5));
  CHECK(cfg.strategies[2].fixed_bits == 3);
}

TEST_CASE("invalid configs name the offending field") {
  CHECK(ConfigErrorPath("grid: {levels: []}") == "grid.levels");
  CHECK(ConfigErrorPath("grid: {}") == "grid");
  CHECK(ConfigErrorPath("cost: {weight: -0.05}") == "cost.weight");
  CHECK(ConfigErrorPath("cost: {variant: magic}") == "cost.variant");
  CHECK(ConfigErrorPath("cost: {ber_constraint: 0.5}") == "cost.ber_constraint");
  CHECK(ConfigErrorPath("a_max: 0") == "a_max");
  CHECK(ConfigErrorPath("a_max: nine") == "a_max");
  CHECK(ConfigErrorPath("colour: blue") == "colour");
  CHECK(ConfigErrorPath("grid: {levels: [1, 1]}") == "grid.levels");
  CHECK(ConfigErrorPath("grid: {auto: 100}") == "grid.auto");
  CHECK(ConfigErrorPath("channel: {noise_relay: 0}") == "channel.noise_relay");
  CHECK(ConfigErrorPath("sweep: {symbols: 0}") == "sweep.symbols");
  CHECK(ConfigErrorPath("sweep: {avg_snr_db: []}") == "sweep.avg_snr_db");
  CHECK(ConfigErrorPath("strategies: [{name: x, kind: nope}]") ==
        "strategies[0].kind");
  CHECK(ConfigErrorPath("strategies: [{name: x, kind: fixed_rate, fixed_bits: 0}]") ==
        "strategies[0]");
  CHECK(ConfigErrorPath(
            "strategies: [{name: x, kind: fixed_rate}, {name: x, kind: fixed_rate}]") ==
        "strategies[1].name");
  CHECK(ConfigErrorPath("a_max: [") == "<root>");
}

TEST_CASE("shipped configs load") {
  for (const char* name : {"power_proxy.yaml", "ber_bound.yaml", "sweep.yaml"}) {
    CAPTURE(name);
    CHECK_NOTHROW(LoadConfig(std::string(RELAYGAME_CONFIG_DIR) + "/" + name));
  }
  CHECK_THROWS_AS(LoadConfig("/nonexistent/config.yaml"), ConfigError);
}

}  // namespace
}  // namespace relaygame
