#include <cmath>
#include <numeric>

#include "faultnet/anomaly.hpp"
#include "faultnet/signal_sim.hpp"
#include "test_support.hpp"

using namespace faultnet;

namespace {

double sample_variance(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

// 20 000 samples after the onset.
SimConfig long_config() {
  SimConfig c;
  c.duration = 2.1;
  return c;
}

}  // namespace

TEST(Anomaly, GaussianSamplesEdgeCases) {
  EXPECT_EQ(gaussian_samples(4, 0.5, 0.0, 3), std::vector<double>(4, 0.5));
  EXPECT_FAULTNET_ERROR(gaussian_samples(4, 0.0, -1.0, 3), ErrorKind::Domain);
  EXPECT_EQ(gaussian_samples(100, 0.0, 0.1, 9), gaussian_samples(100, 0.0, 0.1, 9));
}

TEST(Anomaly, ZeroAmplitudeIsIdentity) {
  const auto cfg = long_config();
  const auto rec = simulate_healthy(cfg);
  AnomalyConfig a;
  a.f_amplitude = 0.0;
  a.inject_time = 0.1;
  const auto out = inject_fdi(rec, a);
  EXPECT_EQ(out.i_abc, rec.i_abc);
  EXPECT_EQ(out.v_abc, rec.v_abc);
  EXPECT_EQ(out.label().fault_kind, FaultKind::None);
}

TEST(Anomaly, InjectedVarianceScalesWithF) {
  const auto cfg = long_config();
  const auto rec = simulate_healthy(cfg);
  for (double f : {0.25, 0.5, 1.0, 2.0}) {
    AnomalyConfig a;
    a.f_amplitude = f;
    a.inject_time = 0.1;
    a.seed = 17;
    const auto out = inject_fdi(rec, a);
    const std::size_t onset = first_index_at(rec, 0.1);
    ASSERT_EQ(rec.size() - onset, 20000u);
    for (int p = 0; p < 3; ++p) {
      std::vector<double> diff;
      for (std::size_t k = 0; k < rec.size(); ++k) {
        const double d = out.i_abc[p][k] - rec.i_abc[p][k];
        if (k < onset) ASSERT_EQ(d, 0.0);
        else diff.push_back(d);
      }
      const double expected = 0.1 * f * f;
      EXPECT_NEAR(sample_variance(diff), expected, 0.05 * expected) << "F=" << f << " phase " << p;
    }
    EXPECT_EQ(out.v_abc, rec.v_abc);
  }
}

TEST(Anomaly, TargetsAndIndependentChannels) {
  const auto rec = simulate_healthy(SimConfig{});
  AnomalyConfig a;
  a.targets = {false, true, true};
  const auto out = inject_fdi(rec, a);
  EXPECT_EQ(out.i_abc[0], rec.i_abc[0]);
  EXPECT_NE(out.i_abc[1], rec.i_abc[1]);
  const std::size_t k = rec.size() - 1;
  EXPECT_NE(out.i_abc[1][k] - rec.i_abc[1][k], out.i_abc[2][k] - rec.i_abc[2][k]);
}

TEST(Anomaly, Validation) {
  const auto rec = simulate_healthy(SimConfig{});
  AnomalyConfig a;
  a.f_amplitude = 2.5;
  EXPECT_FAULTNET_ERROR(inject_fdi(rec, a), ErrorKind::Config);
  a = AnomalyConfig{};
  a.base_power = 0.2;
  EXPECT_FAULTNET_ERROR(inject_fdi(rec, a), ErrorKind::Config);
  a = AnomalyConfig{};
  a.inject_time = 1.0;
  EXPECT_FAULTNET_ERROR(inject_fdi(rec, a), ErrorKind::Bounds);
  const auto once = inject_fdi(rec, AnomalyConfig{});
  EXPECT_FAULTNET_ERROR(inject_fdi(once, AnomalyConfig{}), ErrorKind::Scenario);
}

TEST(Anomaly, CombinedWithSwitchFault) {
  FaultScenario s;
  s.switches = {SwitchId::S5, SwitchId::S4};
  s.anomaly = AnomalyConfig{};
  const auto rec = simulate_scenario(SimConfig{}, s);
  const auto label = rec.label();
  EXPECT_TRUE(label.valid());
  EXPECT_EQ(label.fault_kind, FaultKind::Anomaly);
  EXPECT_EQ(label.switch_set.name(), "S5+S4");
}
