#include "relaygame/analysis.h"

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

namespace relaygame {
namespace {

std::vector<double> DistinctLevels(const SnrGrid& grid) {
  std::vector<double> out = grid.levels1();
  out.insert(out.end(), grid.levels2().begin(), grid.levels2().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Point(GridIndex idx) {
  return "(" + std::to_string(idx.i1) + "," + std::to_string(idx.i2) + ")";
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

PropertyReport Finish(PropertyReport report) {
  report.holds = report.violations.empty();
  return report;
}

}  // namespace

std::string_view PropertyName(Property property) {
  switch (property) {
    case Property::kSubmodularity:
      return "submodularity";
    case Property::kParetoOrder:
      return "pareto_order";
    case Property::kSymmetry:
      return "symmetry";
    case Property::kMonotonicity:
      return "monotonicity";
    case Property::kErrorCostSubmodularity:
      return "error_cost_submodularity";
  }
  return "unknown";
}

PropertyReport CheckSubmodularity(const CostModel& model, const SnrGrid& grid) {
  PropertyReport report{Property::kSubmodularity, true, true, {}};
  for (double gamma : DistinctLevels(grid)) {
    for (int a = 0; a < model.a_max(); ++a) {
      for (int b = 0; b < model.a_max(); ++b) {
        const double margin = SubmodularityMargin(model, gamma, a, b);
        if (margin < -kMarginTolerance) {
          report.violations.push_back(
              {"gamma=" + Num(gamma) + " a_own=" + std::to_string(a) +
                   " a_other=" + std::to_string(b),
               margin});
        }
      }
    }
  }
  return Finish(std::move(report));
}

PropertyReport CheckPareto(const CostModel& model,
                           const ExtremalEquilibria& eq) {
  PropertyReport report{Property::kParetoOrder, true, true, {}};
  const SnrGrid& grid = eq.largest.grid();
  for (std::size_t k = 0; k < grid.num_points(); ++k) {
    const GridIndex idx = grid.Unflat(k);
    const SnrVector snr = grid.At(idx);
    const ActionProfile& lo = eq.smallest.at(idx);
    const ActionProfile& hi = eq.largest.at(idx);
    for (Player p : {Player::kFirst, Player::kSecond}) {
      const double margin = CostTotal(model, snr[p], hi[p], hi[Other(p)]) -
                            CostTotal(model, snr[p], lo[p], lo[Other(p)]);
      if (margin < -kMarginTolerance) {
        report.violations.push_back(
            {"c" + std::to_string(static_cast<int>(p) + 1) + " at " + Point(idx),
             margin});
      }
    }
  }
  return Finish(std::move(report));
}

PropertyReport CheckSymmetry(const ExtremalEquilibria& eq) {
  PropertyReport report{Property::kSymmetry, true, true, {}};
  const SnrGrid& grid = eq.largest.grid();
  if (!grid.symmetric()) {
    report.applicable = false;
    return report;
  }
  const std::pair<const char*, const Policy*> policies[] = {
      {"largest", &eq.largest}, {"smallest", &eq.smallest}};
  for (const auto& [name, policy] : policies) {
    for (std::size_t k = 0; k < grid.num_points(); ++k) {
      const GridIndex idx = grid.Unflat(k);
      const ActionProfile& here = policy->at(idx);
      const ActionProfile& there = policy->at({idx.i2, idx.i1});
      if (here.a1 != there.a2) {
        report.violations.push_back(
            {std::string(name) + ".a1" + Point(idx) + " vs a2" +
                 Point({idx.i2, idx.i1}),
             static_cast<double>(there.a2 - here.a1)});
      }
    }
  }
  return Finish(std::move(report));
}

PropertyReport CheckMonotonicity(const ExtremalEquilibria& eq) {
  PropertyReport report{Property::kMonotonicity, true, true, {}};
  const SnrGrid& grid = eq.largest.grid();
  const std::pair<const char*, const Policy*> policies[] = {
      {"largest", &eq.largest}, {"smallest", &eq.smallest}};
  for (const auto& [name, policy] : policies) {
    for (std::size_t k = 0; k < grid.num_points(); ++k) {
      const GridIndex idx = grid.Unflat(k);
      GridIndex next[2] = {{idx.i1 + 1, idx.i2}, {idx.i1, idx.i2 + 1}};
      const bool exists[2] = {idx.i1 + 1 < grid.size1(),
                              idx.i2 + 1 < grid.size2()};
      for (int axis = 0; axis < 2; ++axis) {
        if (!exists[axis]) continue;
        for (Player p : {Player::kFirst, Player::kSecond}) {
          const int drop = policy->at(next[axis])[p] - policy->at(idx)[p];
          if (drop < 0) {
            report.violations.push_back(
                {std::string(name) + ".a" +
                     std::to_string(static_cast<int>(p) + 1) + " " +
                     Point(idx) + "->" + Point(next[axis]),
                 static_cast<double>(drop)});
          }
        }
      }
    }
  }
  return Finish(std::move(report));
}

PropertyReport CheckErrorCostSubmodularity(const CostModel& model,
                                           const SnrGrid& grid) {
  PropertyReport report{Property::kErrorCostSubmodularity, true, true, {}};
  const std::vector<double> levels = DistinctLevels(grid);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double lo = levels[k];
    const double hi = levels[k + 1];
    for (int a = 0; a < model.a_max(); ++a) {
      const double margin =
          (CostError(model, hi, a) - CostError(model, hi, a + 1)) +
          (CostError(model, lo, a + 1) - CostError(model, lo, a));
      if (margin < -kMarginTolerance) {
        report.violations.push_back({"gamma-=" + Num(lo) + " gamma+=" +
                                         Num(hi) + " a=" + std::to_string(a),
                                     margin});
      }
    }
  }
  return Finish(std::move(report));
}

std::vector<SurfaceRow> ExportPolicySurface(const Policy& policy,
                                            Player component) {
  const SnrGrid& grid = policy.grid();
  std::vector<SurfaceRow> rows;
  rows.reserve(grid.num_points());
  for (std::size_t k = 0; k < grid.num_points(); ++k) {
    const GridIndex idx = grid.Unflat(k);
    const SnrVector snr = grid.At(idx);
    rows.push_back({snr.gamma1, snr.gamma2, policy.at(idx)[component]});
  }
  return rows;
}

}  // namespace relaygame
