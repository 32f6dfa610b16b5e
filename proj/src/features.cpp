#include "faultnet/features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "faultnet/anomaly.hpp"
#include "faultnet/error.hpp"
#include "faultnet/kernels.hpp"

namespace faultnet {

AlphaBetaSample clarke(double a, double b, double c) noexcept {
  double alpha = 0.0;
  double beta = 0.0;
  kernels::scalar_table().clarke(&a, &b, &c, &alpha, &beta, 1);
  return {alpha, beta};
}

DqSample park(AlphaBetaSample s, double theta) noexcept {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return {s.alpha * c + s.beta * sn, s.beta * c - s.alpha * sn};
}

namespace {

bool constant(std::span<const double> x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

struct WindowStats {
  double mean;
  double variance;
  double autocorr;
};

// Two-pass moments: a mean estimate first, then sums centered on it.
WindowStats window_stats(std::span<const double> x) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  const double shift = kernels::sum(x) / nd;
  const kernels::LagMoments m = kernels::lag_moments(x, shift);

  WindowStats out{};
  out.mean = shift + m.sum / nd;
  out.variance = std::max(0.0, (m.sumsq - m.sum * m.sum / nd) / (nd - 1.0));

  const double first = x.front() - shift;
  const double last = x.back() - shift;
  const double nh = nd - 1.0;
  const double s_head = m.sum - last;
  const double s_tail = m.sum - first;
  const double var_head = m.sumsq - last * last - s_head * s_head / nh;
  const double var_tail = m.sumsq - first * first - s_tail * s_tail / nh;
  if (constant(x.first(n - 1)) || constant(x.last(n - 1)) || var_head <= 0.0 ||
      var_tail <= 0.0) {
    out.autocorr = 0.0;
  } else {
    const double cov = m.cross - s_head * s_tail / nh;
    out.autocorr = std::clamp(cov / std::sqrt(var_head * var_tail), -1.0, 1.0);
  }
  return out;
}

}  // namespace

double lag1_autocorr(std::span<const double> x) {
  if (x.size() < 2) fail(ErrorKind::Domain, "lag1_autocorr needs at least 2 samples");
  return window_stats(x).autocorr;
}

std::string_view to_string(Frame f) noexcept {
  return f == Frame::AlphaBeta ? "ab" : "dq";
}

std::string_view to_string(Stat s) noexcept {
  switch (s) {
    case Stat::Mean: return "mean";
    case Stat::Variance: return "var";
    case Stat::Lag1Autocorr: return "ac1";
  }
  return "?";
}

std::string channel_name(Channel c, Frame f) {
  const bool ab = f == Frame::AlphaBeta;
  switch (c) {
    case Channel::V1: return ab ? "Valpha" : "Vd";
    case Channel::V2: return ab ? "Vbeta" : "Vq";
    case Channel::I1: return ab ? "Ialpha" : "Id";
    case Channel::I2: return ab ? "Ibeta" : "Iq";
  }
  return "?";
}

std::vector<std::string> FeatureSpec::feature_names() const {
  std::vector<std::string> names;
  names.reserve(dimension());
  for (Channel c : channels)
    for (Stat s : stats) names.push_back(channel_name(c, frame) + "_" + std::string(to_string(s)));
  return names;
}

std::string FeatureSpec::id() const {
  std::string out(to_string(frame));
  out += "/w" + std::to_string(window_len) + "/s" + std::to_string(window_stride) + "/";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (i) out += ',';
    out += to_string(stats[i]);
  }
  out += '/';
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (i) out += ',';
    out += channel_name(channels[i], frame);
  }
  return out;
}

void FeatureSpec::validate() const {
  if (window_len < 2) fail(ErrorKind::Config, "window_len must be >= 2");
  if (window_stride < 1) fail(ErrorKind::Config, "window_stride must be >= 1");
  if (stats.empty()) fail(ErrorKind::Config, "stats must be nonempty");
  if (channels.empty()) fail(ErrorKind::Config, "channels must be nonempty");
}

FeatureSpec default_feature_spec(const SimConfig& config) {
  FeatureSpec spec;
  const double cycle = config.fs / config.f0;
  spec.window_len = static_cast<std::size_t>(std::llround(cycle));
  spec.window_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cycle / 2.0)));
  return spec;
}

LabelSet window_label(const WaveformRecord& record, std::size_t start,
                      std::size_t len) {
  const double t_end = record.t[start + len - 1];
  const FaultScenario& sc = record.scenario;
  const bool hardware = !sc.switches.empty() && t_end >= sc.fault_time;
  const bool fdi = sc.anomaly && sc.anomaly->active() && t_end >= sc.anomaly->inject_time;
  LabelSet label;
  label.fault_present = hardware || fdi;
  if (fdi)
    label.fault_kind = FaultKind::Anomaly;
  else if (hardware)
    label.fault_kind = FaultKind::Hardware;
  if (hardware) label.switch_set = sc.switches;
  return label;
}

std::array<std::vector<double>, 4> transform_record(const WaveformRecord& record,
                                                    Frame frame) {
  const std::size_t n = record.size();
  std::array<std::vector<double>, 4> out;
  for (auto& ch : out) ch.resize(n);
  auto& v1 = out[static_cast<std::size_t>(Channel::V1)];
  auto& v2 = out[static_cast<std::size_t>(Channel::V2)];
  auto& i1 = out[static_cast<std::size_t>(Channel::I1)];
  auto& i2 = out[static_cast<std::size_t>(Channel::I2)];
  kernels::clarke(record.v_abc[0], record.v_abc[1], record.v_abc[2], v1, v2);
  kernels::clarke(record.i_abc[0], record.i_abc[1], record.i_abc[2], i1, i2);
  if (frame == Frame::DQ) {
    std::vector<double> cos_t(n), sin_t(n);
    const double omega = 2.0 * std::numbers::pi * record.config.f0;
    for (std::size_t k = 0; k < n; ++k) {
      cos_t[k] = std::cos(omega * record.t[k]);
      sin_t[k] = std::sin(omega * record.t[k]);
    }
    std::vector<double> d(n), q(n);
    kernels::rotate(v1, v2, cos_t, sin_t, d, q);
    v1.swap(d);
    v2.swap(q);
    kernels::rotate(i1, i2, cos_t, sin_t, d, q);
    i1.swap(d);
    i2.swap(q);
  }
  return out;
}

std::vector<FeatureVector> extract_features(const WaveformRecord& record,
                                            const FeatureSpec& spec) {
  spec.validate();
  const std::size_t n = record.size();
  if (n < spec.window_len)
    fail(ErrorKind::Window, "record has " + std::to_string(n) +
                                " samples, shorter than window_len " +
                                std::to_string(spec.window_len));
  const auto series = transform_record(record, spec.frame);
  const std::string spec_id = spec.id();

  std::vector<FeatureVector> out;
  out.reserve((n - spec.window_len) / spec.window_stride + 1);
  for (std::size_t start = 0; start + spec.window_len <= n; start += spec.window_stride) {
    FeatureVector fv;
    fv.values.reserve(spec.dimension());
    for (Channel c : spec.channels) {
      const auto& ch = series[static_cast<std::size_t>(c)];
      const WindowStats ws =
          window_stats(std::span<const double>(ch).subspan(start, spec.window_len));
      for (Stat s : spec.stats) {
        switch (s) {
          case Stat::Mean: fv.values.push_back(ws.mean); break;
          case Stat::Variance: fv.values.push_back(ws.variance); break;
          case Stat::Lag1Autocorr: fv.values.push_back(ws.autocorr); break;
        }
      }
    }
    fv.label = window_label(record, start, spec.window_len);
    fv.spec_id = spec_id;
    fv.window_start = start;
    out.push_back(std::move(fv));
  }
  return out;
}

}  // namespace faultnet
