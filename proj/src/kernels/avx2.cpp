// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
#include <immintrin.h>

#include "faultnet/kernels.hpp"
#include "kernel_constants.hpp"

namespace faultnet::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double squared_distance_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

// Multiply then add (no fused op) so results match the reference bit for bit.
void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void clarke_avx2(const double* a, const double* b, const double* c,
                 double* alpha, double* beta, std::size_t n) {
  const __m256d two_thirds = _mm256_set1_pd(kTwoThirds);
  const __m256d inv_sqrt3 = _mm256_set1_pd(kInvSqrt3);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    __m256d t = _mm256_sub_pd(va, _mm256_mul_pd(half, vb));
    t = _mm256_sub_pd(t, _mm256_mul_pd(half, vc));
    _mm256_storeu_pd(alpha + i, _mm256_mul_pd(two_thirds, t));
    _mm256_storeu_pd(beta + i, _mm256_mul_pd(inv_sqrt3, _mm256_sub_pd(vb, vc)));
  }
  for (; i < n; ++i) {
    alpha[i] = kTwoThirds * (a[i] - 0.5 * b[i] - 0.5 * c[i]);
    beta[i] = kInvSqrt3 * (b[i] - c[i]);
  }
}

void rotate_avx2(const double* alpha, const double* beta, const double* cos_t,
                 const double* sin_t, double* d, double* q, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(alpha + i);
    const __m256d vb = _mm256_loadu_pd(beta + i);
    const __m256d vc = _mm256_loadu_pd(cos_t + i);
    const __m256d vs = _mm256_loadu_pd(sin_t + i);
    _mm256_storeu_pd(d + i, _mm256_add_pd(_mm256_mul_pd(va, vc), _mm256_mul_pd(vb, vs)));
    _mm256_storeu_pd(q + i, _mm256_sub_pd(_mm256_mul_pd(vb, vc), _mm256_mul_pd(va, vs)));
  }
  for (; i < n; ++i) {
    d[i] = alpha[i] * cos_t[i] + beta[i] * sin_t[i];
    q[i] = beta[i] * cos_t[i] - alpha[i] * sin_t[i];
  }
}

LagMoments lag_moments_avx2(const double* x, std::size_t n, double shift) {
  LagMoments m;
  if (n == 0) return m;
  const __m256d vs = _mm256_set1_pd(shift);
  __m256d acc_sum = _mm256_setzero_pd();
  __m256d acc_sq = _mm256_setzero_pd();
  __m256d acc_cross = _mm256_setzero_pd();
  std::size_t i = 0;
  // x[i+4] must exist for the shifted load.
  for (; i + 5 <= n; i += 4) {
    const __m256d u = _mm256_sub_pd(_mm256_loadu_pd(x + i), vs);
    const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), vs);
    acc_sum = _mm256_add_pd(acc_sum, u);
    acc_sq = _mm256_fmadd_pd(u, u, acc_sq);
    acc_cross = _mm256_fmadd_pd(u, w, acc_cross);
  }
  m.sum = hsum(acc_sum);
  m.sumsq = hsum(acc_sq);
  m.cross = hsum(acc_cross);
  for (; i < n; ++i) {
    const double u = x[i] - shift;
    m.sum += u;
    m.sumsq += u * u;
    if (i + 1 < n) m.cross += u * (x[i + 1] - shift);
  }
  return m;
}

}  // namespace

const KernelTable& avx2_table_impl() noexcept {
  static const KernelTable table{
      "avx2",    sum_avx2,    dot_avx2,    squared_distance_avx2,
      axpy_avx2, clarke_avx2, rotate_avx2, lag_moments_avx2,
  };
  return table;
}

}  // namespace faultnet::kernels
