#pragma once
// Data-parallel inner loops shared by the feature extractor and the learners.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2/FMA
// variant and on AArch64 a NEON variant are compiled in their own translation
// units and selected once at startup from the CPU feature flags. Setting the
// environment variable FAULTNET_SIMD=scalar forces the reference path.
//
// Element-wise kernels (clarke, rotate, axpy) are bit-identical across
// variants. Reductions (dot, squared_distance, lag_moments) reassociate the
// sum and agree with the reference to a relative 1e-12.

#include <cstddef>
#include <span>
#include <string_view>

namespace faultnet::kernels {

// Centered sums over x[0..n) after subtracting `shift`:
//   sum   = sum (x_i - s)
//   sumsq = sum (x_i - s)^2
//   cross = sum_{i<n-1} (x_i - s)(x_{i+1} - s)
struct LagMoments {
  double sum = 0.0;
  double sumsq = 0.0;
  double cross = 0.0;
};

struct KernelTable {
  std::string_view name;
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*squared_distance)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*clarke)(const double* a, const double* b, const double* c,
                 double* alpha, double* beta, std::size_t n);
  void (*rotate)(const double* alpha, const double* beta, const double* cos_t,
                 const double* sin_t, double* d, double* q, std::size_t n);
  LagMoments (*lag_moments)(const double* x, std::size_t n, double shift);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled or the CPU lacks the feature.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

// The table chosen at startup.
const KernelTable& active() noexcept;

// Span front ends over active(). Size mismatches are caller bugs and are
// checked by the callers' own shape validation.
double sum(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
double squared_distance(std::span<const double> x,
                        std::span<const double> y) noexcept;
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;
void clarke(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<double> alpha,
            std::span<double> beta) noexcept;
void rotate(std::span<const double> alpha, std::span<const double> beta,
            std::span<const double> cos_t, std::span<const double> sin_t,
            std::span<double> d, std::span<double> q) noexcept;
LagMoments lag_moments(std::span<const double> x, double shift) noexcept;

}  // namespace faultnet::kernels
