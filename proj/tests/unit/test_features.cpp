#include <cmath>
#include <numbers>
#include <numeric>

#include "faultnet/features.hpp"
#include "faultnet/signal_sim.hpp"
#include "test_support.hpp"

using namespace faultnet;
using faultnet::test::random_vector;

namespace {

// Full Clarke matrix applied row by row.
AlphaBetaSample clarke_oracle(double a, double b, double c) {
  const double m[2][3] = {{2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0},
                          {0.0, 1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0)}};
  return {m[0][0] * a + m[0][1] * b + m[0][2] * c, m[1][0] * a + m[1][1] * b + m[1][2] * c};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(Features, ClarkeMatchesMatrixOracle) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = random_vector(3, gen, -10, 10);
    const auto got = clarke(v[0], v[1], v[2]);
    const auto want = clarke_oracle(v[0], v[1], v[2]);
    EXPECT_NEAR(got.alpha, want.alpha, 1e-12);
    EXPECT_NEAR(got.beta, want.beta, 1e-12);
  }
}

TEST(Features, ParkIsARotation) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> ang(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const auto v = random_vector(2, gen, -10, 10);
    const double th = ang(gen);
    const auto dq = park({v[0], v[1]}, th);
    EXPECT_NEAR(dq.d, std::cos(th) * v[0] + std::sin(th) * v[1], 1e-12);
    EXPECT_NEAR(dq.q, -std::sin(th) * v[0] + std::cos(th) * v[1], 1e-12);
    EXPECT_NEAR(std::hypot(dq.d, dq.q), std::hypot(v[0], v[1]), 1e-12);
  }
}

TEST(Features, BalancedRecordHasConstantRadius) {
  SimConfig cfg;
  cfg.sensor_noise_std = 0.0;
  const auto rec = simulate_healthy(cfg);
  const auto ab = transform_record(rec, Frame::AlphaBeta);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    const double rv = std::hypot(ab[0][k], ab[1][k]);
    const double ri = std::hypot(ab[2][k], ab[3][k]);
    EXPECT_NEAR(rv / cfg.v_amp, 1.0, 1e-9);
    EXPECT_NEAR(ri / cfg.i_amp, 1.0, 1e-9);
  }
  // In the synchronous frame the voltage is a constant (0, -V) vector.
  const auto dq = transform_record(rec, Frame::DQ);
  for (std::size_t k = 0; k < rec.size(); k += 13) {
    EXPECT_NEAR(dq[0][k], 0.0, 1e-9);
    EXPECT_NEAR(dq[1][k], -cfg.v_amp, 1e-9);
  }
}

TEST(Features, Lag1AutocorrMatchesPearson) {
  std::mt19937_64 gen(7);
  for (std::size_t n : {3u, 10u, 167u}) {
    const auto x = random_vector(n, gen);
    const std::vector<double> head(x.begin(), x.end() - 1), tail(x.begin() + 1, x.end());
    EXPECT_NEAR(lag1_autocorr(x), pearson(head, tail), 1e-12);
  }
  EXPECT_EQ(lag1_autocorr(std::vector<double>{2, 2, 2, 2}), 0.0);
  EXPECT_NEAR(lag1_autocorr(std::vector<double>{1, 2, 3, 4}), 1.0, 1e-12);
  EXPECT_FAULTNET_ERROR(lag1_autocorr(std::vector<double>{1}), ErrorKind::Domain);
}

TEST(Features, WindowStatsMatchDirectComputation) {
  const auto rec = simulate_healthy(SimConfig{});
  const FeatureSpec spec;
  const auto windows = extract_features(rec, spec);
  ASSERT_EQ(windows.size(), (rec.size() - 167) / 83 + 1);
  const auto ab = transform_record(rec, Frame::AlphaBeta);
  const auto& w = windows[5];
  const std::vector<double> x(ab[2].begin() + 415, ab[2].begin() + 415 + 167);  // Ialpha
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / 167.0;
  double var = 0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= 166.0;
  EXPECT_EQ(w.window_start, 415u);
  EXPECT_NEAR(w.values[0], mean, 1e-12);
  EXPECT_NEAR(w.values[1], var, 1e-12);
  EXPECT_NEAR(w.values[2], lag1_autocorr(x), 1e-12);
}

TEST(Features, SpecIdentityAndNames) {
  const FeatureSpec spec = default_feature_spec(SimConfig{});
  EXPECT_EQ(spec.window_len, 167u);
  EXPECT_EQ(spec.window_stride, 83u);
  EXPECT_EQ(spec.dimension(), 12u);
  EXPECT_EQ(spec.id(), "ab/w167/s83/mean,var,ac1/Ialpha,Ibeta,Valpha,Vbeta");
  EXPECT_EQ(spec.feature_names().front(), "Ialpha_mean");
  EXPECT_EQ(spec.feature_names().back(), "Vbeta_ac1");
}

TEST(Features, WindowLabelsFollowOnsets) {
  FaultScenario s;
  s.switches = {SwitchId::S2};
  s.fault_time = 0.1;
  s.anomaly = AnomalyConfig{};
  s.anomaly->inject_time = 0.15;
  const auto rec = simulate_scenario(SimConfig{}, s);
  for (const auto& w : extract_features(rec, FeatureSpec{})) {
    const double t_end = rec.t[w.window_start + 166];
    EXPECT_TRUE(w.label.valid());
    EXPECT_EQ(w.label.fault_present, t_end >= 0.1);
    if (t_end >= 0.15) {
      EXPECT_EQ(w.label.fault_kind, FaultKind::Anomaly);
    } else if (t_end >= 0.1) {
      EXPECT_EQ(w.label.fault_kind, FaultKind::Hardware);
    }
  }
}

TEST(Features, ShortRecordIsAWindowError) {
  SimConfig cfg;
  cfg.duration = 0.01;
  EXPECT_FAULTNET_ERROR(extract_features(simulate_healthy(cfg), FeatureSpec{}), ErrorKind::Window);
}
