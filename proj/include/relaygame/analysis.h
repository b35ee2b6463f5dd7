#ifndef RELAYGAME_ANALYSIS_H_
#define RELAYGAME_ANALYSIS_H_

// Post-hoc verification of the structural properties of the game and its
// extremal equilibria. Every check sweeps in ascending grid index order,
// then ascending action, so violation lists are reproducible.

#include <string>
#include <string_view>
#include <vector>

#include "relaygame/game_core.h"
#include "relaygame/solver.h"

namespace relaygame {

// Margins below -kMarginTolerance count as violations.
inline constexpr double kMarginTolerance = 1e-12;

enum class Property {
  kSubmodularity,           // cost submodular in (a_own, a_other)
  kParetoOrder,             // smallest PSNE costs <= largest PSNE costs
  kSymmetry,                // theta_i(g_a, g_b) == theta_-i(g_b, g_a)
  kMonotonicity,            // extremal PSNEs nondecreasing in the SNRs
  kErrorCostSubmodularity,  // c_e submodular in (gamma, a)
};

std::string_view PropertyName(Property property);

struct Violation {
  // Human-readable location, e.g. "largest.a1 (3,4)->(4,4)".
  std::string where;
  double margin = 0.0;
};

struct PropertyReport {
  Property property;
  bool applicable = true;
  bool holds = true;  // == violations.empty()
  std::vector<Violation> violations;
};

// Cross-difference of the total cost over every distinct grid level and
// every a_own, a_other < A_m.
PropertyReport CheckSubmodularity(const CostModel& model, const SnrGrid& grid);

// c_i(gamma_i, smallest) <= c_i(gamma_i, largest) for both players at every
// point.
PropertyReport CheckPareto(const CostModel& model,
                           const ExtremalEquilibria& eq);

// Not applicable (holds, no violations) when the level sets differ.
PropertyReport CheckSymmetry(const ExtremalEquilibria& eq);

// Compares each point with its +1 neighbour along both axes, for both
// policies and both components.
PropertyReport CheckMonotonicity(const ExtremalEquilibria& eq);

// c_e(g+, a) + c_e(g-, a+1) - c_e(g-, a) - c_e(g+, a+1) over consecutive
// distinct levels and every a < A_m.
PropertyReport CheckErrorCostSubmodularity(const CostModel& model,
                                           const SnrGrid& grid);

struct SurfaceRow {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  int action = 0;
  friend bool operator==(const SurfaceRow&, const SurfaceRow&) = default;
};

// One row per grid point, row-major.
std::vector<SurfaceRow> ExportPolicySurface(const Policy& policy,
                                            Player component);

}  // namespace relaygame

#endif  // RELAYGAME_ANALYSIS_H_
