#pragma once
// False-data-injection model: from inject_time on, each targeted current
// sensor reads i + F * g with g ~ Normal(mean, base_power).

#include <cstdint>
#include <vector>

#include "faultnet/scenario.hpp"

namespace faultnet {

// n draws of Normal(mean, variance) from mt19937_64(seed). Throws
// ErrorKind::Domain for negative or non-finite variance.
std::vector<double> gaussian_samples(std::size_t n, double mean, double variance,
                                     std::uint64_t seed);

// Throws ErrorKind::Config for parameters outside the experiment grid when
// strict_grid is set, ErrorKind::Bounds when inject_time is outside the
// record.
void validate_anomaly(const AnomalyConfig& cfg, const SimConfig& config);

// Returns a copy of `record` with the attack applied and recorded in
// scenario.anomaly. A record that already carries an anomaly is rejected
// (ErrorKind::Scenario). Voltage channels and non-target currents are
// returned bit-identical; F == 0 leaves every sample unchanged.
WaveformRecord inject_fdi(const WaveformRecord& record, const AnomalyConfig& cfg);

// First sample index with t >= time (record.size() if none).
std::size_t first_index_at(const WaveformRecord& record, double time);

}  // namespace faultnet
