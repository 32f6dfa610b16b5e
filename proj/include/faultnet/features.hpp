#pragma once
// Clarke/Park transforms and sliding-window statistics.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "faultnet/scenario.hpp"

namespace faultnet {

struct AlphaBetaSample {
  double alpha = 0.0;
  double beta = 0.0;
};

struct DqSample {
  double d = 0.0;
  double q = 0.0;
};

// Amplitude-invariant Clarke transform.
AlphaBetaSample clarke(double a, double b, double c) noexcept;

// Rotation into the frame at angle theta: d = a cos + b sin, q = -a sin + b cos.
DqSample park(AlphaBetaSample s, double theta) noexcept;

// Pearson correlation of x[0..n-1) against x[1..n). Returns 0 when either
// slice is constant. Throws ErrorKind::Domain for n < 2.
double lag1_autocorr(std::span<const double> x);

enum class Frame { AlphaBeta, DQ };
enum class Stat { Mean, Variance, Lag1Autocorr };
// First/second axis of the voltage or current in the chosen frame:
// (alpha, beta) for AlphaBeta, (d, q) for DQ.
enum class Channel { V1, V2, I1, I2 };

std::string_view to_string(Frame f) noexcept;
std::string_view to_string(Stat s) noexcept;
std::string channel_name(Channel c, Frame f);

struct FeatureSpec {
  Frame frame = Frame::AlphaBeta;
  std::size_t window_len = 167;
  std::size_t window_stride = 83;
  std::vector<Stat> stats = {Stat::Mean, Stat::Variance, Stat::Lag1Autocorr};
  std::vector<Channel> channels = {Channel::I1, Channel::I2, Channel::V1,
                                   Channel::V2};

  std::size_t dimension() const noexcept { return stats.size() * channels.size(); }
  // Names in vector order: channels-major, stats-minor ("Ialpha_mean", ...).
  std::vector<std::string> feature_names() const;
  // Canonical text identity, e.g. "ab/w167/s83/mean,var,ac1/Ialpha,Ibeta,...".
  std::string id() const;
  // Throws ErrorKind::Config.
  void validate() const;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

// One fundamental cycle per window, half-cycle stride, all stats, 12 features.
FeatureSpec default_feature_spec(const SimConfig& config);

struct FeatureVector {
  std::vector<double> values;
  LabelSet label;
  std::string spec_id;
  std::size_t window_start = 0;
};

// Label of the window [start, start + len): a switch fault or an FDI counts
// once the window reaches its onset, so windows straddling an onset carry it
// and windows entirely before it carry the conditions already present.
LabelSet window_label(const WaveformRecord& record, std::size_t start,
                      std::size_t len);

// Throws ErrorKind::Window when the record is shorter than one window.
std::vector<FeatureVector> extract_features(const WaveformRecord& record,
                                            const FeatureSpec& spec);

// The transformed channel series the windows are computed on, indexed by
// Channel. Exposed for tests and diagnostics.
std::array<std::vector<double>, 4> transform_record(const WaveformRecord& record,
                                                    Frame frame);

}  // namespace faultnet
