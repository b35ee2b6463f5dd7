#ifndef RELAYGAME_SOLVER_H_
#define RELAYGAME_SOLVER_H_

// Extremal pure-strategy Nash equilibria by Cournot tatonnement.
//
// The game is supermodular (the cost is submodular in the joint action), so
// iterating the maximal best response from (A_m, A_m) descends monotonically
// to the largest equilibrium, and the minimal best response from (0, 0)
// ascends to the smallest one. Both components update simultaneously from
// the previous iterate.

#include <cstdint>
#include <optional>
#include <vector>

#include "relaygame/game_core.h"

namespace relaygame {

enum class Direction {
  kFromTop,     // maximal best response, start at sup(A), yields largest PSNE
  kFromBottom,  // minimal best response, start at inf(A), yields smallest PSNE
};

// Largest minimizer of c_i(gamma_own, ., a_other).
int BestResponseMax(const CostModel& model, double gamma_own, int a_other);
// Smallest minimizer.
int BestResponseMin(const CostModel& model, double gamma_own, int a_other);
int BestResponse(const CostModel& model, double gamma_own, int a_other,
                 Direction direction);

// Both players best-respond to the other's component of `current`. This is
// also one round of the online learning loop: each user observes the other's
// last action and updates.
ActionProfile OnlineLearningStep(const CostModel& model, const SnrVector& snr,
                                 const ActionProfile& current,
                                 Direction direction);

struct BestResponseTrace {
  SnrVector snr;
  // profiles[0] is the starting point; the last two entries are equal.
  std::vector<ActionProfile> profiles;
  // First k with profiles[k] == profiles[k + 1].
  int converged_at = 0;

  const ActionProfile& fixed_point() const { return profiles.back(); }
};

// Runs the joint best-response iteration at one SNR vector from `start`.
// Throws std::logic_error if more than 4 (A_m + 1) iterations are needed,
// which cannot happen for a submodular cost.
BestResponseTrace Tatonnement(const CostModel& model, const SnrVector& snr,
                              const ActionProfile& start, Direction direction);

// From sup(A) or inf(A) depending on direction.
BestResponseTrace Tatonnement(const CostModel& model, const SnrVector& snr,
                              Direction direction);

struct CournotSolution {
  Policy policy;
  std::vector<BestResponseTrace> traces;  // row-major, one per grid point
  std::int64_t evaluations = 0;           // single-player best responses
};

// Solves every grid point independently. `threads` only affects speed.
CournotSolution CournotSolve(const CostModel& model, const SnrGrid& grid,
                             Direction direction, int threads = 1);

// Brute-force PSNE set at one SNR vector: profiles from which neither player
// can strictly lower its own cost alone. Sorted lexicographically.
std::vector<ActionProfile> EnumeratePsne(const CostModel& model,
                                         const SnrVector& snr);

struct ExtremalEquilibria {
  Policy largest;
  Policy smallest;
};

ExtremalEquilibria SolveExtremal(const CostModel& model, const SnrGrid& grid,
                                 int threads = 1);

struct AccelerationOptions {
  // Fill theta_i(g_a, g_b) from theta_-i(g_b, g_a); needs equal level sets.
  bool use_symmetry = true;
  // Seed each point from already solved comparable neighbours; needs an
  // error cost that is submodular in (gamma, a), i.e. the power proxy.
  bool use_warm_start = true;
};

struct AcceleratedSolution {
  ExtremalEquilibria equilibria;
  std::int64_t evaluations = 0;
  std::int64_t points_mirrored = 0;
};

// Same equilibria as SolveExtremal with fewer best-response evaluations.
// Symmetry is skipped silently when the grid is not symmetric. Throws
// std::invalid_argument when warm starts are requested for the BER-bound cost.
AcceleratedSolution SolveAccelerated(const CostModel& model,
                                     const SnrGrid& grid,
                                     const AccelerationOptions& options = {});

// Warm-start seed for `idx` given the points solved so far (nullopt = not yet
// solved). FromTop takes the meet of the solved upper neighbours
// (i1 + 1, i2) and (i1, i2 + 1), else sup(A); FromBottom the join of the
// solved lower neighbours, else inf(A).
ActionProfile WarmStartSeed(const CostModel& model, const SnrGrid& grid,
                            const std::vector<std::optional<ActionProfile>>& solved,
                            GridIndex idx, Direction direction);

}  // namespace relaygame

#endif  // RELAYGAME_SOLVER_H_
