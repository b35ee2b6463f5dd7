#include "relaygame/channel.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaygame {

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double DbToRatio(double db) { return std::pow(10.0, db / 10.0); }
double RatioToDb(double ratio) { return 10.0 * std::log10(ratio); }

void ChannelParams::Validate() const {
  const std::pair<const char*, double> fields[] = {
      {"noise_relay", noise_relay}, {"noise_user1", noise_user1},
      {"noise_user2", noise_user2}, {"power_user1", power_user1},
      {"power_user2", power_user2}, {"power_relay", power_relay},
      {"mean_gain1", mean_gain1},   {"mean_gain2", mean_gain2},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument(std::string(name) +
                                  " must be finite and > 0");
    }
  }
}

SnrVector EffectiveSnr(const ChannelParams& p, const FadingDraw& draw) {
  const double g1 = draw.gain1_sq;
  const double g2 = draw.gain2_sq;
  // 1 / (G^2 sigma_r^2) with G^2 = 1 / (P1 g1 + P2 g2 + sigma_r^2).
  const double inv_gain_term =
      (p.power_user1 * g1 + p.power_user2 * g2 + p.noise_relay) /
      p.noise_relay;
  const double gamma1 =
      (p.power_relay * p.power_user1 * g1 * g2 / (p.noise_user2 * p.noise_relay)) /
      (p.power_user2 * g2 / p.noise_user2 + inv_gain_term);
  const double gamma2 =
      (p.power_relay * p.power_user2 * g2 * g1 / (p.noise_user1 * p.noise_relay)) /
      (p.power_user1 * g1 / p.noise_user1 + inv_gain_term);
  return {gamma1, gamma2};
}

FadingDraw DrawFading(double mean_gain1, double mean_gain2, Rng& rng) {
  const double g1 = rng.Exponential(mean_gain1);
  const double g2 = rng.Exponential(mean_gain2);
  return {g1, g2};
}

std::size_t QuantizeLevel(const std::vector<double>& levels, double gamma) {
  const auto it = std::lower_bound(levels.begin(), levels.end(), gamma);
  if (it == levels.begin()) return 0;
  if (it == levels.end()) return levels.size() - 1;
  const std::size_t upper = static_cast<std::size_t>(it - levels.begin());
  // Ties go to the lower level.
  return (*it - gamma < gamma - levels[upper - 1]) ? upper : upper - 1;
}

GridIndex QuantizeToGrid(const SnrGrid& grid, const SnrVector& snr) {
  return {QuantizeLevel(grid.levels1(), snr.gamma1),
          QuantizeLevel(grid.levels2(), snr.gamma2)};
}

SnrVector EstimateMeanSnr(const ChannelParams& params, int samples,
                          std::uint64_t seed) {
  params.Validate();
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(seed);
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    const SnrVector snr = EffectiveSnr(
        params, DrawFading(params.mean_gain1, params.mean_gain2, rng));
    sum1 += snr.gamma1;
    sum2 += snr.gamma2;
  }
  return {sum1 / samples, sum2 / samples};
}

ChannelParams CalibrateAverageSnr(const ChannelParams& params,
                                  double target_avg_db, int samples,
                                  std::uint64_t seed) {
  params.Validate();
  if (samples < 10000) {
    throw std::invalid_argument("calibration needs at least 1e4 samples");
  }
  const double target = DbToRatio(target_avg_db);

  std::vector<FadingDraw> unit(static_cast<std::size_t>(samples));
  Rng rng(seed);
  for (FadingDraw& d : unit) d = DrawFading(1.0, 1.0, rng);

  auto scaled = [&](double factor) {
    ChannelParams out = params;
    out.mean_gain1 = params.mean_gain1 * factor;
    out.mean_gain2 = params.mean_gain2 * factor;
    return out;
  };
  auto mean_snr = [&](double factor) {
    const ChannelParams p = scaled(factor);
    double sum = 0.0;
    for (const FadingDraw& d : unit) {
      const SnrVector snr = EffectiveSnr(
          p, {d.gain1_sq * p.mean_gain1, d.gain2_sq * p.mean_gain2});
      sum += snr.gamma1 + snr.gamma2;
    }
    return sum / (2.0 * samples);
  };

  double lo = std::log(1e-6);
  double hi = std::log(1e6);
  if (!(mean_snr(std::exp(lo)) <= target && target <= mean_snr(std::exp(hi)))) {
    throw std::runtime_error("average SNR " + std::to_string(target_avg_db) +
                             " dB is not reachable with gain factors in "
                             "[1e-6, 1e6]");
  }
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = mean_snr(std::exp(mid));
    if (std::abs(value / target - 1.0) < 1e-6) break;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return scaled(std::exp(mid));
}

}  // namespace relaygame
