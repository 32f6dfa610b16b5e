#include "faultnet/signal_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "faultnet/anomaly.hpp"

namespace faultnet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::array<double, 3> kPhaseShift = {0.0, -kTwoPi / 3.0, kTwoPi / 3.0};

WaveformRecord ideal_record(const SimConfig& config, double load_level) {
  const std::size_t n = config.num_samples();
  WaveformRecord rec;
  rec.config = config;
  rec.t.resize(n);
  for (auto& ch : rec.v_abc) ch.resize(n);
  for (auto& ch : rec.i_abc) ch.resize(n);

  const double omega = kTwoPi * config.f0;
  const double i_peak = config.i_amp * load_level;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / config.fs;
    rec.t[k] = t;
    const double wt = omega * t;
    for (std::size_t p = 0; p < 3; ++p) {
      rec.v_abc[p][k] = config.v_amp * std::sin(wt + kPhaseShift[p]);
      rec.i_abc[p][k] =
          i_peak * std::sin(wt + kPhaseShift[p] - config.phase_offset_i);
    }
  }
  return rec;
}

void add_sensor_noise(WaveformRecord& rec) {
  const double std_dev = rec.config.sensor_noise_std;
  if (std_dev == 0.0) return;
  std::mt19937_64 gen(rec.config.seed);
  std::normal_distribution<double> noise(0.0, std_dev);
  for (auto& ch : rec.v_abc)
    for (double& x : ch) x += noise(gen);
  for (auto& ch : rec.i_abc)
    for (double& x : ch) x += noise(gen);
}

}  // namespace

WaveformRecord simulate_healthy(const SimConfig& config) {
  config.validate();
  WaveformRecord rec = ideal_record(config, 1.0);
  add_sensor_noise(rec);
  return rec;
}

WaveformRecord simulate_faulted(const SimConfig& config,
                                const FaultScenario& scenario) {
  config.validate();
  scenario.validate(config);
  WaveformRecord rec = ideal_record(config, scenario.load_level);
  rec.scenario = scenario;
  // FDI is applied by inject_fdi on the measured record, not here.
  rec.scenario.anomaly.reset();

  std::array<bool, 3> open_upper{};
  std::array<bool, 3> open_lower{};
  for (SwitchId s : scenario.switches.members()) {
    const SwitchLocation loc = config.switch_map[static_cast<std::size_t>(s)];
    const auto leg = static_cast<std::size_t>(loc.leg);
    (loc.position == Position::Upper ? open_upper : open_lower)[leg] = true;
  }

  const double v_scale = 1.0 - config.voltage_distortion;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    if (rec.t[k] < scenario.fault_time) continue;
    for (std::size_t p = 0; p < 3; ++p) {
      double& i = rec.i_abc[p][k];
      const bool suppressed = (open_upper[p] && i > 0.0) || (open_lower[p] && i < 0.0);
      if (suppressed) {
        i *= config.residual_factor;
        rec.v_abc[p][k] *= v_scale;
      }
    }
  }
  add_sensor_noise(rec);
  return rec;
}

}  // namespace faultnet

namespace faultnet {

WaveformRecord simulate_scenario(const SimConfig& config,
                                 const FaultScenario& scenario) {
  WaveformRecord rec = simulate_faulted(config, scenario);
  if (scenario.anomaly) rec = inject_fdi(rec, *scenario.anomaly);
  return rec;
}

}  // namespace faultnet
