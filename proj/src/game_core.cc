#include "relaygame/game_core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace relaygame {
namespace {

void CheckLevels(const std::vector<double>& levels, const char* name) {
  if (levels.empty()) {
    throw std::invalid_argument(std::string(name) + ": grid has no levels");
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0) || !std::isfinite(levels[k])) {
      throw std::invalid_argument(std::string(name) +
                                  ": levels must be finite and > 0");
    }
    if (k > 0 && !(levels[k] > levels[k - 1])) {
      throw std::invalid_argument(std::string(name) +
                                  ": levels must be strictly increasing");
    }
  }
}

void CheckGamma(double gamma) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("SNR must be > 0, got " +
                                std::to_string(gamma));
  }
}

}  // namespace

bool Dominates(const ActionProfile& upper, const ActionProfile& lower) {
  return upper.a1 >= lower.a1 && upper.a2 >= lower.a2;
}

ActionProfile Join(const ActionProfile& p, const ActionProfile& q) {
  return {std::max(p.a1, q.a1), std::max(p.a2, q.a2)};
}

ActionProfile Meet(const ActionProfile& p, const ActionProfile& q) {
  return {std::min(p.a1, q.a1), std::min(p.a2, q.a2)};
}

SnrGrid::SnrGrid(std::vector<double> levels1, std::vector<double> levels2)
    : levels1_(std::move(levels1)), levels2_(std::move(levels2)) {
  CheckLevels(levels1_, "levels1");
  CheckLevels(levels2_, "levels2");
}

SnrGrid::SnrGrid(std::vector<double> levels) : SnrGrid(levels, levels) {}

std::string_view ErrorCostName(ErrorCost variant) {
  switch (variant) {
    case ErrorCost::kBerBound:
      return "ber_bound";
    case ErrorCost::kPowerProxy:
      return "power_proxy";
  }
  return "unknown";
}

ErrorCost ParseErrorCost(std::string_view name) {
  if (name == "ber_bound") return ErrorCost::kBerBound;
  if (name == "power_proxy") return ErrorCost::kPowerProxy;
  throw std::invalid_argument("unknown error cost variant '" +
                              std::string(name) +
                              "' (expected ber_bound or power_proxy)");
}

CostModel::CostModel(ErrorCost variant, double weight, int a_max,
                     double ber_constraint)
    : variant_(variant),
      weight_(weight),
      a_max_(a_max),
      ber_constraint_(ber_constraint) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("weight must be finite and > 0");
  }
  if (a_max < 1 || a_max > 30) {
    throw std::invalid_argument("a_max must be in [1, 30]");
  }
  // -ln(5 Pb0) >= 0 needs Pb0 <= 0.2.
  if (!(ber_constraint > 0.0 && ber_constraint <= 0.2)) {
    throw std::invalid_argument("ber_constraint must be in (0, 0.2]");
  }
}

void CostModel::CheckAction(int a) const {
  if (a < 0 || a > a_max_) {
    throw std::out_of_range("action " + std::to_string(a) +
                            " outside [0, " + std::to_string(a_max_) + "]");
  }
}

void CostModel::CheckProfile(const ActionProfile& p) const {
  CheckAction(p.a1);
  CheckAction(p.a2);
}

double CostError(const CostModel& model, double gamma, int a) {
  CheckGamma(gamma);
  model.CheckAction(a);
  if (a == 0) return 0.0;
  const double levels_minus_one = std::ldexp(1.0, a) - 1.0;
  switch (model.variant()) {
    case ErrorCost::kBerBound:
      return 0.2 * std::exp(-1.5 * gamma / levels_minus_one);
    case ErrorCost::kPowerProxy:
      return -std::log(5.0 * model.ber_constraint()) * levels_minus_one /
             (1.5 * gamma);
  }
  return 0.0;
}

double CostTotal(const CostModel& model, double gamma_own, int a_own,
                 int a_other) {
  model.CheckAction(a_other);
  const double error = CostError(model, gamma_own, a_own);
  return model.weight() * error +
         static_cast<double>(a_other + 1) / static_cast<double>(a_own + 1);
}

int SingleAgentBest(const CostModel& model, double gamma) {
  CheckGamma(gamma);
  int best = 0;
  double best_cost = 0.0;
  for (int a = 0; a <= model.a_max(); ++a) {
    const double cost = model.weight() * CostError(model, gamma, a) +
                        1.0 / static_cast<double>(a + 1);
    if (a == 0 || cost <= best_cost) {
      best = a;
      best_cost = cost;
    }
  }
  return best;
}

double SubmodularityMargin(const CostModel& model, double gamma, int a_own,
                           int a_other) {
  if (a_own < 0 || a_own >= model.a_max() || a_other < 0 ||
      a_other >= model.a_max()) {
    throw std::out_of_range("submodularity margin needs actions in [0, a_max)");
  }
  // Terms sharing a_own are differenced first so the error costs cancel
  // before they can swamp the O(1/a^2) margin.
  return (CostTotal(model, gamma, a_own + 1, a_other) -
          CostTotal(model, gamma, a_own + 1, a_other + 1)) +
         (CostTotal(model, gamma, a_own, a_other + 1) -
          CostTotal(model, gamma, a_own, a_other));
}

Policy::Policy(SnrGrid grid)
    : grid_(std::move(grid)), table_(grid_.num_points()) {}

Policy::Policy(SnrGrid grid, std::vector<ActionProfile> table)
    : grid_(std::move(grid)), table_(std::move(table)) {
  if (table_.size() != grid_.num_points()) {
    throw std::invalid_argument("policy table size does not match grid");
  }
  for (const ActionProfile& p : table_) {
    if (p.a1 < 0 || p.a2 < 0) {
      throw std::invalid_argument("policy actions must be nonnegative");
    }
  }
}

}  // namespace relaygame
