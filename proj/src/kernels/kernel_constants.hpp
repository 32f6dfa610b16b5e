#pragma once

namespace faultnet::kernels {

// Amplitude-invariant Clarke coefficients. (2/3)(sqrt(3)/2) == 1/sqrt(3).
inline constexpr double kTwoThirds = 2.0 / 3.0;
inline constexpr double kInvSqrt3 = 0.57735026918962576451;

}  // namespace faultnet::kernels
