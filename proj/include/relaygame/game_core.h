#ifndef RELAYGAME_GAME_CORE_H_
#define RELAYGAME_GAME_CORE_H_

// Two-scheduler adaptive m-QAM game over a network-coded two-way relay.
//
// Each scheduler i picks a_i in {0, ..., A_m} bits per QAM symbol (0 means
// silence) and pays
//
//   c_i(gamma_i, a_i, a_-i) = w * c_e(gamma_i, a_i) + (a_-i + 1) / (a_i + 1)
//
// where c_e is either the exponential BER bound or the power proxy that
// guarantees a target BER. SNRs are linear ratios throughout.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relaygame {

enum class Player { kFirst = 0, kSecond = 1 };

constexpr Player Other(Player p) {
  return p == Player::kFirst ? Player::kSecond : Player::kFirst;
}

// Joint bit-rate choice (a_1, a_2). Ordered componentwise for lattice
// purposes; operator<=> is the lexicographic order, used only for sorting.
struct ActionProfile {
  int a1 = 0;
  int a2 = 0;

  int operator[](Player p) const { return p == Player::kFirst ? a1 : a2; }
  int& operator[](Player p) { return p == Player::kFirst ? a1 : a2; }

  friend auto operator<=>(const ActionProfile&, const ActionProfile&) = default;
};

// Componentwise partial order.
bool Dominates(const ActionProfile& upper, const ActionProfile& lower);

ActionProfile Join(const ActionProfile& p, const ActionProfile& q);
ActionProfile Meet(const ActionProfile& p, const ActionProfile& q);

struct SnrVector {
  double gamma1 = 0.0;
  double gamma2 = 0.0;

  double operator[](Player p) const {
    return p == Player::kFirst ? gamma1 : gamma2;
  }
  friend bool operator==(const SnrVector&, const SnrVector&) = default;
};

struct GridIndex {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

// Finite quantized SNR set levels1 x levels2. Levels are strictly increasing
// positive ratios; construction throws std::invalid_argument otherwise.
class SnrGrid {
 public:
  SnrGrid(std::vector<double> levels1, std::vector<double> levels2);
  // Same levels for both users.
  explicit SnrGrid(std::vector<double> levels);

  const std::vector<double>& levels1() const { return levels1_; }
  const std::vector<double>& levels2() const { return levels2_; }
  const std::vector<double>& levels(Player p) const {
    return p == Player::kFirst ? levels1_ : levels2_;
  }

  std::size_t size1() const { return levels1_.size(); }
  std::size_t size2() const { return levels2_.size(); }
  std::size_t num_points() const { return size1() * size2(); }

  // Row-major flat index.
  std::size_t Flat(GridIndex idx) const { return idx.i1 * size2() + idx.i2; }
  GridIndex Unflat(std::size_t flat) const {
    return {flat / size2(), flat % size2()};
  }
  SnrVector At(GridIndex idx) const {
    return {levels1_[idx.i1], levels2_[idx.i2]};
  }

  bool symmetric() const { return levels1_ == levels2_; }

  friend bool operator==(const SnrGrid&, const SnrGrid&) = default;

 private:
  std::vector<double> levels1_;
  std::vector<double> levels2_;
};

enum class ErrorCost {
  kBerBound,    // 0.2 exp(-1.5 gamma / (2^a - 1))
  kPowerProxy,  // -ln(5 Pb0) (2^a - 1) / (1.5 gamma)
};

std::string_view ErrorCostName(ErrorCost variant);
// Accepts "ber_bound" / "power_proxy"; throws std::invalid_argument.
ErrorCost ParseErrorCost(std::string_view name);

// Parameters of the per-scheduler cost. Validated on construction.
class CostModel {
 public:
  CostModel(ErrorCost variant, double weight, int a_max,
            double ber_constraint = 1e-3);

  static CostModel PowerProxy(double weight, int a_max = 9,
                              double ber_constraint = 1e-3) {
    return CostModel(ErrorCost::kPowerProxy, weight, a_max, ber_constraint);
  }
  static CostModel BerBound(double weight, int a_max = 9) {
    return CostModel(ErrorCost::kBerBound, weight, a_max);
  }

  ErrorCost variant() const { return variant_; }
  double weight() const { return weight_; }
  int a_max() const { return a_max_; }
  double ber_constraint() const { return ber_constraint_; }

  // Throws std::out_of_range unless 0 <= a <= a_max.
  void CheckAction(int a) const;
  void CheckProfile(const ActionProfile& p) const;

  ActionProfile Top() const { return {a_max_, a_max_}; }
  ActionProfile Bottom() const { return {0, 0}; }

  friend bool operator==(const CostModel&, const CostModel&) = default;

 private:
  ErrorCost variant_;
  double weight_;
  int a_max_;
  double ber_constraint_;
};

// Error-rate loss c_e(gamma, a). a = 0 costs exactly 0 in both variants.
double CostError(const CostModel& model, double gamma, int a);

// Full cost of one scheduler: w c_e + c_t + c_r.
double CostTotal(const CostModel& model, double gamma_own, int a_own,
                 int a_other);

// Conventional single-agent AM: argmin over a of w c_e + 1/(a+1), largest
// minimizer on exact ties.
int SingleAgentBest(const CostModel& model, double gamma);

// Cross-difference c(a+1,b) + c(a,b+1) - c(a+1,b+1) - c(a,b) at fixed gamma.
// Nonnegative for every input; analytically 1/(a+1) - 1/(a+2).
double SubmodularityMargin(const CostModel& model, double gamma, int a_own,
                           int a_other);

// A complete total map from grid points to action profiles.
class Policy {
 public:
  // Every point starts at (0, 0).
  explicit Policy(SnrGrid grid);
  Policy(SnrGrid grid, std::vector<ActionProfile> table);

  const SnrGrid& grid() const { return grid_; }
  const ActionProfile& at(GridIndex idx) const { return table_[grid_.Flat(idx)]; }
  ActionProfile& at(GridIndex idx) { return table_[grid_.Flat(idx)]; }
  std::span<const ActionProfile> table() const { return table_; }
  std::span<ActionProfile> table() { return table_; }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  SnrGrid grid_;
  std::vector<ActionProfile> table_;
};

}  // namespace relaygame

#endif  // RELAYGAME_GAME_CORE_H_
