#include "relaygame/solver.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "parallel.h"

namespace relaygame {
namespace {

// Scans every action; `prefer_largest` picks the last exact-tie minimizer.
int ArgminCost(const CostModel& model, double gamma_own, int a_other,
               bool prefer_largest) {
  model.CheckAction(a_other);
  int best = 0;
  double best_cost = CostTotal(model, gamma_own, 0, a_other);
  for (int a = 1; a <= model.a_max(); ++a) {
    const double cost = CostTotal(model, gamma_own, a, a_other);
    if (cost < best_cost || (prefer_largest && cost == best_cost)) {
      best = a;
      best_cost = cost;
    }
  }
  return best;
}

ActionProfile Swapped(const ActionProfile& p) { return {p.a2, p.a1}; }

}  // namespace

int BestResponseMax(const CostModel& model, double gamma_own, int a_other) {
  return ArgminCost(model, gamma_own, a_other, /*prefer_largest=*/true);
}

int BestResponseMin(const CostModel& model, double gamma_own, int a_other) {
  return ArgminCost(model, gamma_own, a_other, /*prefer_largest=*/false);
}

int BestResponse(const CostModel& model, double gamma_own, int a_other,
                 Direction direction) {
  return direction == Direction::kFromTop
             ? BestResponseMax(model, gamma_own, a_other)
             : BestResponseMin(model, gamma_own, a_other);
}

ActionProfile OnlineLearningStep(const CostModel& model, const SnrVector& snr,
                                 const ActionProfile& current,
                                 Direction direction) {
  return {BestResponse(model, snr.gamma1, current.a2, direction),
          BestResponse(model, snr.gamma2, current.a1, direction)};
}

BestResponseTrace Tatonnement(const CostModel& model, const SnrVector& snr,
                              const ActionProfile& start,
                              Direction direction) {
  model.CheckProfile(start);
  BestResponseTrace trace{snr, {start}, 0};
  const int cap = 4 * (model.a_max() + 1);
  for (int k = 0; k < cap; ++k) {
    const ActionProfile next =
        OnlineLearningStep(model, snr, trace.profiles.back(), direction);
    const bool done = next == trace.profiles.back();
    trace.profiles.push_back(next);
    if (done) {
      trace.converged_at = static_cast<int>(trace.profiles.size()) - 2;
      return trace;
    }
  }
  throw std::logic_error("best-response iteration did not converge within " +
                         std::to_string(cap) + " steps");
}

BestResponseTrace Tatonnement(const CostModel& model, const SnrVector& snr,
                              Direction direction) {
  return Tatonnement(
      model, snr,
      direction == Direction::kFromTop ? model.Top() : model.Bottom(),
      direction);
}

CournotSolution CournotSolve(const CostModel& model, const SnrGrid& grid,
                             Direction direction, int threads) {
  const std::size_t n = grid.num_points();
  std::vector<BestResponseTrace> traces(n);
  internal::ParallelFor(n, threads, [&](std::size_t k) {
    traces[k] = Tatonnement(model, grid.At(grid.Unflat(k)), direction);
  });
  std::vector<ActionProfile> table(n);
  std::int64_t evaluations = 0;
  for (std::size_t k = 0; k < n; ++k) {
    table[k] = traces[k].fixed_point();
    evaluations += 2 * static_cast<std::int64_t>(traces[k].profiles.size() - 1);
  }
  return {Policy(grid, std::move(table)), std::move(traces), evaluations};
}

std::vector<ActionProfile> EnumeratePsne(const CostModel& model,
                                         const SnrVector& snr) {
  const int n = model.a_max() + 1;
  // best[i][b] = min over a of player i's cost against b.
  std::vector<double> best1(n), best2(n);
  for (int b = 0; b < n; ++b) {
    best1[b] = CostTotal(model, snr.gamma1, 0, b);
    best2[b] = CostTotal(model, snr.gamma2, 0, b);
    for (int a = 1; a < n; ++a) {
      best1[b] = std::min(best1[b], CostTotal(model, snr.gamma1, a, b));
      best2[b] = std::min(best2[b], CostTotal(model, snr.gamma2, a, b));
    }
  }
  std::vector<ActionProfile> out;
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      if (CostTotal(model, snr.gamma1, a1, a2) <= best1[a2] &&
          CostTotal(model, snr.gamma2, a2, a1) <= best2[a1]) {
        out.push_back({a1, a2});
      }
    }
  }
  return out;
}

ExtremalEquilibria SolveExtremal(const CostModel& model, const SnrGrid& grid,
                                 int threads) {
  return {CournotSolve(model, grid, Direction::kFromTop, threads).policy,
          CournotSolve(model, grid, Direction::kFromBottom, threads).policy};
}

ActionProfile WarmStartSeed(
    const CostModel& model, const SnrGrid& grid,
    const std::vector<std::optional<ActionProfile>>& solved, GridIndex idx,
    Direction direction) {
  if (direction == Direction::kFromTop) {
    ActionProfile seed = model.Top();
    if (idx.i1 + 1 < grid.size1()) {
      const auto& up = solved[grid.Flat({idx.i1 + 1, idx.i2})];
      if (up) seed = Meet(seed, *up);
    }
    if (idx.i2 + 1 < grid.size2()) {
      const auto& up = solved[grid.Flat({idx.i1, idx.i2 + 1})];
      if (up) seed = Meet(seed, *up);
    }
    return seed;
  }
  ActionProfile seed = model.Bottom();
  if (idx.i1 > 0) {
    const auto& down = solved[grid.Flat({idx.i1 - 1, idx.i2})];
    if (down) seed = Join(seed, *down);
  }
  if (idx.i2 > 0) {
    const auto& down = solved[grid.Flat({idx.i1, idx.i2 - 1})];
    if (down) seed = Join(seed, *down);
  }
  return seed;
}

AcceleratedSolution SolveAccelerated(const CostModel& model,
                                     const SnrGrid& grid,
                                     const AccelerationOptions& options) {
  if (options.use_warm_start && model.variant() == ErrorCost::kBerBound) {
    throw std::invalid_argument(
        "warm starts need an error cost submodular in (gamma, a); the "
        "BER-bound cost is not");
  }
  const bool mirror = options.use_symmetry && grid.symmetric();
  const std::size_t n = grid.num_points();
  AcceleratedSolution result{{Policy(grid), Policy(grid)}, 0, 0};

  auto solve_pass = [&](Direction direction, Policy& policy) {
    std::vector<std::optional<ActionProfile>> solved(n);
    const bool top = direction == Direction::kFromTop;
    // Largest: descending so that upper neighbours are done first; smallest:
    // ascending. Mirrored points always have their transpose solved already.
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t k = top ? n - 1 - step : step;
      const GridIndex idx = grid.Unflat(k);
      const bool transpose_done = top ? idx.i1 < idx.i2 : idx.i1 > idx.i2;
      if (mirror && transpose_done) {
        solved[k] = Swapped(*solved[grid.Flat({idx.i2, idx.i1})]);
        ++result.points_mirrored;
        continue;
      }
      const ActionProfile seed =
          options.use_warm_start
              ? WarmStartSeed(model, grid, solved, idx, direction)
              : (top ? model.Top() : model.Bottom());
      const BestResponseTrace trace =
          Tatonnement(model, grid.At(idx), seed, direction);
      result.evaluations +=
          2 * static_cast<std::int64_t>(trace.profiles.size() - 1);
      solved[k] = trace.fixed_point();
    }
    for (std::size_t k = 0; k < n; ++k) policy.table()[k] = *solved[k];
  };

  solve_pass(Direction::kFromTop, result.equilibria.largest);
  solve_pass(Direction::kFromBottom, result.equilibria.smallest);
  return result;
}

}  // namespace relaygame
