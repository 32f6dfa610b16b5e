#include "faultnet/kernels.hpp"

#include "kernel_constants.hpp"

namespace faultnet::kernels {
namespace {

double sum_ref(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_ref(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double squared_distance_ref(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void axpy_ref(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void clarke_ref(const double* a, const double* b, const double* c,
                double* alpha, double* beta, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = kTwoThirds * (a[i] - 0.5 * b[i] - 0.5 * c[i]);
    beta[i] = kInvSqrt3 * (b[i] - c[i]);
  }
}

void rotate_ref(const double* alpha, const double* beta, const double* cos_t,
                const double* sin_t, double* d, double* q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = alpha[i] * cos_t[i] + beta[i] * sin_t[i];
    q[i] = beta[i] * cos_t[i] - alpha[i] * sin_t[i];
  }
}

LagMoments lag_moments_ref(const double* x, std::size_t n, double shift) {
  LagMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = x[i] - shift;
    m.sum += u;
    m.sumsq += u * u;
    if (i + 1 < n) m.cross += u * (x[i + 1] - shift);
  }
  return m;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{
      "scalar",   sum_ref,    dot_ref,        squared_distance_ref,
      axpy_ref,   clarke_ref, rotate_ref,     lag_moments_ref,
  };
  return table;
}

}  // namespace faultnet::kernels
