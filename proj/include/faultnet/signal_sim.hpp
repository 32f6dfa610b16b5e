#pragma once
// Steady-state three-phase inverter output model with open-switch faults.
//
// Healthy output is a balanced positive-sequence set: v_x = V sin(wt + p_x),
// i_x = I sin(wt + p_x - phi) with p = (0, -120, +120) degrees. An open upper
// device on leg L scales the positive half-cycles of i_L by residual_factor;
// an open lower device does the same to the negative half-cycles. Whenever a
// current half-cycle is suppressed, v_L on the same samples is reduced by
// voltage_distortion. Gaussian sensor noise is added last, drawn per channel
// in the order va, vb, vc, ia, ib, ic from one mt19937_64 stream, so samples
// before the fault inception are identical to the healthy record.

#include "faultnet/scenario.hpp"

namespace faultnet {

// Identifier of the generator used for all simulated randomness.
inline constexpr std::string_view kPrngName = "mt19937_64+normal_distribution";

WaveformRecord simulate_healthy(const SimConfig& config);

// scenario.anomaly is not applied here; the returned record carries no
// anomaly and is passed through inject_fdi when one is configured.
WaveformRecord simulate_faulted(const SimConfig& config,
                                const FaultScenario& scenario);

// simulate_faulted followed by inject_fdi when scenario.anomaly is set.
WaveformRecord simulate_scenario(const SimConfig& config,
                                 const FaultScenario& scenario);

}  // namespace faultnet
