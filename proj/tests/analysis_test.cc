#include "relaygame/analysis.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "relaygame/config.h"
#include "relaygame/solver.h"

namespace relaygame {
namespace {

const SnrGrid& DefaultGrid() {
  static const SnrGrid grid(DefaultLevels());
  return grid;
}

TEST_CASE("submodularity holds with the closed-form margin") {
  for (const CostModel& m :
       {CostModel::BerBound(50.0), CostModel::PowerProxy(0.05)}) {
    const PropertyReport r = CheckSubmodularity(m, DefaultGrid());
    CHECK(r.applicable);
    CHECK(r.holds);
    CHECK(r.violations.empty());
    for (double gamma : DefaultLevels()) {
      for (int a = 0; a < m.a_max(); ++a) {
        for (int b = 0; b < m.a_max(); ++b) {
          CHECK(std::fabs(SubmodularityMargin(m, gamma, a, b) -
                          (1.0 / (a + 1) - 1.0 / (a + 2))) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("pareto order of the extremal equilibria") {
  for (const CostModel& m :
       {CostModel::BerBound(50.0), CostModel::PowerProxy(0.05)}) {
    const ExtremalEquilibria eq = SolveExtremal(m, DefaultGrid());
    CHECK(CheckPareto(m, eq).holds);
  }
}

TEST_CASE("smallest equilibrium dominates every equilibrium in cost") {
  for (int a_max : {2, 3, 4}) {
    for (const CostModel& m : {CostModel::BerBound(50.0, a_max),
                               CostModel::PowerProxy(0.05, a_max)}) {
      const ExtremalEquilibria eq = SolveExtremal(m, DefaultGrid());
      for (std::size_t k = 0; k < DefaultGrid().num_points(); ++k) {
        const GridIndex idx = DefaultGrid().Unflat(k);
        const SnrVector snr = DefaultGrid().At(idx);
        const ActionProfile lo = eq.smallest.at(idx);
        for (const ActionProfile& p : EnumeratePsne(m, snr)) {
          CHECK(CostTotal(m, snr.gamma1, lo.a1, lo.a2) <=
                CostTotal(m, snr.gamma1, p.a1, p.a2));
          CHECK(CostTotal(m, snr.gamma2, lo.a2, lo.a1) <=
                CostTotal(m, snr.gamma2, p.a2, p.a1));
        }
      }
    }
  }
}

TEST_CASE("symmetry on equal grids and n/a otherwise") {
  for (const CostModel& m :
       {CostModel::BerBound(50.0), CostModel::PowerProxy(0.05)}) {
    const ExtremalEquilibria eq = SolveExtremal(m, DefaultGrid());
    const PropertyReport r = CheckSymmetry(eq);
    CHECK(r.applicable);
    CHECK(r.holds);
    for (std::size_t i = 0; i < DefaultGrid().size1(); ++i) {
      CHECK(eq.largest.at({i, i}).a1 == eq.largest.at({i, i}).a2);
      CHECK(eq.smallest.at({i, i}).a1 == eq.smallest.at({i, i}).a2);
    }
  }
  const SnrGrid uneven({1, 2, 3}, {1, 2, 4});
  const PropertyReport r =
      CheckSymmetry(SolveExtremal(CostModel::PowerProxy(0.05), uneven));
  CHECK_FALSE(r.applicable);
  CHECK(r.violations.empty());
}

TEST_CASE("symmetry checker catches a planted asymmetry") {
  const CostModel pr = CostModel::PowerProxy(0.05);
  ExtremalEquilibria eq = SolveExtremal(pr, DefaultGrid());
  eq.largest.at({2, 5}).a1 += 1;
  const PropertyReport r = CheckSymmetry(eq);
  CHECK_FALSE(r.holds);
  CHECK(r.violations.size() == 1);
}

TEST_CASE("monotonicity under the power proxy") {
  const CostModel pr = CostModel::PowerProxy(0.05);
  const ExtremalEquilibria eq = SolveExtremal(pr, DefaultGrid());
  CHECK(CheckMonotonicity(eq).holds);
  CHECK(CheckErrorCostSubmodularity(pr, DefaultGrid()).holds);

  ExtremalEquilibria broken = eq;
  broken.smallest.at({4, 4}).a2 = pr.a_max();
  CHECK_FALSE(CheckMonotonicity(broken).holds);
}

TEST_CASE("the BER-bound error cost is not submodular in (gamma, a)") {
  const CostModel ber = CostModel::BerBound(50.0);
  const PropertyReport r = CheckErrorCostSubmodularity(ber, DefaultGrid());
  CHECK_FALSE(r.holds);
  REQUIRE_FALSE(r.violations.empty());
  const double worst =
      std::min_element(r.violations.begin(), r.violations.end(),
                       [](const Violation& x, const Violation& y) {
                         return x.margin < y.margin;
                       })->margin;
  CHECK(worst < -kMarginTolerance);
}

TEST_CASE("surface export matches the policy and the monotonicity check") {
  const CostModel pr = CostModel::PowerProxy(0.05);
  const ExtremalEquilibria eq = SolveExtremal(pr, DefaultGrid());
  const auto rows = ExportPolicySurface(eq.largest, Player::kFirst);
  CHECK(rows.size() == 121);
  const std::size_t n = DefaultGrid().size2();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const GridIndex idx = DefaultGrid().Unflat(k);
    CHECK(rows[k].action == eq.largest.at(idx).a1);
    if (idx.i1 + 1 < n) CHECK(rows[k + n].action >= rows[k].action);
    if (idx.i2 + 1 < n) CHECK(rows[k + 1].action >= rows[k].action);
  }
}

}  // namespace
}  // namespace relaygame
