#include "faultnet/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "faultnet/error.hpp"
#include "faultnet/hash.hpp"

namespace faultnet {

std::vector<double> gaussian_samples(std::size_t n, double mean, double variance,
                                     std::uint64_t seed) {
  if (!std::isfinite(variance) || variance < 0.0)
    fail(ErrorKind::Domain, "variance must be finite and >= 0");
  if (!std::isfinite(mean)) fail(ErrorKind::Domain, "mean must be finite");
  std::vector<double> out(n, mean);
  if (variance == 0.0) return out;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(mean, std::sqrt(variance));
  for (double& x : out) x = dist(gen);
  return out;
}

void validate_anomaly(const AnomalyConfig& cfg, const SimConfig& config) {
  if (!std::isfinite(cfg.f_amplitude) || cfg.f_amplitude < 0.0)
    fail(ErrorKind::Config, "f_amplitude must be finite and >= 0");
  if (!std::isfinite(cfg.base_power) || cfg.base_power < 0.0)
    fail(ErrorKind::Config, "base_power must be finite and >= 0");
  if (config.strict_grid) {
    if (cfg.f_amplitude > 2.0)
      fail(ErrorKind::Config, "f_amplitude must lie in [0, 2] with strict_grid set");
    if (cfg.mean != 0.0 || cfg.base_power != 0.1)
      fail(ErrorKind::Config,
           "strict_grid requires mean = 0 and base_power = 0.1");
  }
  if (!std::isfinite(cfg.inject_time) || cfg.inject_time < 0.0 ||
      cfg.inject_time >= config.duration)
    fail(ErrorKind::Bounds, "inject_time must satisfy 0 <= inject_time < duration");
}

std::size_t first_index_at(const WaveformRecord& record, double time) {
  const auto it = std::lower_bound(record.t.begin(), record.t.end(), time);
  return static_cast<std::size_t>(it - record.t.begin());
}

WaveformRecord inject_fdi(const WaveformRecord& record, const AnomalyConfig& cfg) {
  if (record.scenario.anomaly)
    fail(ErrorKind::Scenario, "record already carries an injected anomaly");
  validate_anomaly(cfg, record.config);

  WaveformRecord out = record;
  out.scenario.anomaly = cfg;
  if (cfg.f_amplitude == 0.0) return out;

  const std::size_t onset = first_index_at(record, cfg.inject_time);
  const std::size_t n_post = record.size() - onset;
  static constexpr std::array<std::string_view, 3> kChannelKeys = {"Ia", "Ib", "Ic"};
  for (std::size_t p = 0; p < 3; ++p) {
    if (!cfg.targets[p]) continue;
    const auto g = gaussian_samples(n_post, cfg.mean, cfg.base_power,
                                    mix_seed(cfg.seed, kChannelKeys[p]));
    auto& ch = out.i_abc[p];
    for (std::size_t k = 0; k < n_post; ++k) ch[onset + k] += cfg.f_amplitude * g[k];
  }
  return out;
}

}  // namespace faultnet
