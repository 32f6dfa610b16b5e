// AArch64 Advanced SIMD variant. Two doubles per register.
#include <arm_neon.h>

#include "faultnet/kernels.hpp"
#include "kernel_constants.hpp"

namespace faultnet::kernels {
namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double squared_distance_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void clarke_neon(const double* a, const double* b, const double* c,
                 double* alpha, double* beta, std::size_t n) {
  const float64x2_t two_thirds = vdupq_n_f64(kTwoThirds);
  const float64x2_t inv_sqrt3 = vdupq_n_f64(kInvSqrt3);
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a + i);
    const float64x2_t vb = vld1q_f64(b + i);
    const float64x2_t vc = vld1q_f64(c + i);
    float64x2_t t = vsubq_f64(va, vmulq_f64(half, vb));
    t = vsubq_f64(t, vmulq_f64(half, vc));
    vst1q_f64(alpha + i, vmulq_f64(two_thirds, t));
    vst1q_f64(beta + i, vmulq_f64(inv_sqrt3, vsubq_f64(vb, vc)));
  }
  for (; i < n; ++i) {
    alpha[i] = kTwoThirds * (a[i] - 0.5 * b[i] - 0.5 * c[i]);
    beta[i] = kInvSqrt3 * (b[i] - c[i]);
  }
}

void rotate_neon(const double* alpha, const double* beta, const double* cos_t,
                 const double* sin_t, double* d, double* q, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(alpha + i);
    const float64x2_t vb = vld1q_f64(beta + i);
    const float64x2_t vc = vld1q_f64(cos_t + i);
    const float64x2_t vs = vld1q_f64(sin_t + i);
    vst1q_f64(d + i, vaddq_f64(vmulq_f64(va, vc), vmulq_f64(vb, vs)));
    vst1q_f64(q + i, vsubq_f64(vmulq_f64(vb, vc), vmulq_f64(va, vs)));
  }
  for (; i < n; ++i) {
    d[i] = alpha[i] * cos_t[i] + beta[i] * sin_t[i];
    q[i] = beta[i] * cos_t[i] - alpha[i] * sin_t[i];
  }
}

LagMoments lag_moments_neon(const double* x, std::size_t n, double shift) {
  LagMoments m;
  if (n == 0) return m;
  const float64x2_t vs = vdupq_n_f64(shift);
  float64x2_t acc_sum = vdupq_n_f64(0.0);
  float64x2_t acc_sq = vdupq_n_f64(0.0);
  float64x2_t acc_cross = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 3 <= n; i += 2) {
    const float64x2_t u = vsubq_f64(vld1q_f64(x + i), vs);
    const float64x2_t w = vsubq_f64(vld1q_f64(x + i + 1), vs);
    acc_sum = vaddq_f64(acc_sum, u);
    acc_sq = vfmaq_f64(acc_sq, u, u);
    acc_cross = vfmaq_f64(acc_cross, u, w);
  }
  m.sum = vaddvq_f64(acc_sum);
  m.sumsq = vaddvq_f64(acc_sq);
  m.cross = vaddvq_f64(acc_cross);
  for (; i < n; ++i) {
    const double u = x[i] - shift;
    m.sum += u;
    m.sumsq += u * u;
    if (i + 1 < n) m.cross += u * (x[i + 1] - shift);
  }
  return m;
}

}  // namespace

const KernelTable& neon_table_impl() noexcept {
  static const KernelTable table{
      "neon",    sum_neon,    dot_neon,    squared_distance_neon,
      axpy_neon, clarke_neon, rotate_neon, lag_moments_neon,
  };
  return table;
}

}  // namespace faultnet::kernels
