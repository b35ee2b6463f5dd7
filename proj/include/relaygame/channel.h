#ifndef RELAYGAME_CHANNEL_H_
#define RELAYGAME_CHANNEL_H_

// AF physical-layer network coding over a two-way relay: effective
// user-to-user SNRs after self-interference cancellation, Rayleigh fading,
// and quantization onto a finite SNR grid.

#include <cmath>
#include <cstdint>
#include <random>

#include "relaygame/game_core.h"

namespace relaygame {

// Seeded Mersenne Twister with hand-rolled variates so draw sequences do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Exponential(double mean) { return -mean * std::log1p(-Uniform()); }
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent stream seeds from a master seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

double DbToRatio(double db);
double RatioToDb(double ratio);

struct ChannelParams {
  double noise_relay = 1.0;  // sigma_r^2
  double noise_user1 = 1.0;  // sigma_1^2
  double noise_user2 = 1.0;  // sigma_2^2
  double power_user1 = 1.0;
  double power_user2 = 1.0;
  double power_relay = 1.0;
  double mean_gain1 = 1.0;  // E|h_1|^2
  double mean_gain2 = 1.0;  // E|h_2|^2

  // Throws std::invalid_argument naming the first nonpositive field.
  void Validate() const;
};

// Squared magnitudes of the reciprocal user-to-relay channels.
struct FadingDraw {
  double gain1_sq = 0.0;
  double gain2_sq = 0.0;
};

// Effective SNR of each user-to-user path:
//
//   gamma_i = (P_r P_i |h_i|^2 |h_-i|^2 / (s_-i s_r))
//             / (P_-i |h_-i|^2 / s_-i + 1 / (G^2 s_r)),
//   G^2 = 1 / (P_1 |h_1|^2 + P_2 |h_2|^2 + s_r).
//
// Zero when either gain is zero.
SnrVector EffectiveSnr(const ChannelParams& params, const FadingDraw& draw);

// |h_i|^2 exponential with the given means (Rayleigh amplitude).
FadingDraw DrawFading(double mean_gain1, double mean_gain2, Rng& rng);

// Nearest level per axis; values outside the range saturate to the end
// levels, so a zero SNR lands on the smallest level.
std::size_t QuantizeLevel(const std::vector<double>& levels, double gamma);
GridIndex QuantizeToGrid(const SnrGrid& grid, const SnrVector& snr);

// Scales both mean gains by a common factor so that the Monte Carlo mean of
// (gamma_1 + gamma_2) / 2 hits the target average SNR. The sample uses its
// own seed and is reused across bisection steps. Throws std::runtime_error
// if the factor would leave [1e-6, 1e6].
ChannelParams CalibrateAverageSnr(const ChannelParams& params,
                                  double target_avg_db, int samples,
                                  std::uint64_t seed);

// Monte Carlo mean of each user's effective SNR.
SnrVector EstimateMeanSnr(const ChannelParams& params, int samples,
                          std::uint64_t seed);

}  // namespace relaygame

#endif  // RELAYGAME_CHANNEL_H_
