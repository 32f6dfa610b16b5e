#include <cstdlib>
#include <string_view>

#include "faultnet/kernels.hpp"

namespace faultnet::kernels {

#if defined(FAULTNET_HAVE_AVX2)
const KernelTable& avx2_table_impl() noexcept;
#endif
#if defined(FAULTNET_HAVE_NEON)
const KernelTable& neon_table_impl() noexcept;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(FAULTNET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(FAULTNET_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &neon_table_impl();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("FAULTNET_SIMD")) {
    if (std::string_view(env) == "scalar") return scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

double sum(std::span<const double> x) noexcept {
  return active().sum(x.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return active().dot(x.data(), y.data(), x.size());
}

double squared_distance(std::span<const double> x,
                        std::span<const double> y) noexcept {
  return active().squared_distance(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(a, x.data(), y.data(), x.size());
}

void clarke(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<double> alpha,
            std::span<double> beta) noexcept {
  active().clarke(a.data(), b.data(), c.data(), alpha.data(), beta.data(),
                  a.size());
}

void rotate(std::span<const double> alpha, std::span<const double> beta,
            std::span<const double> cos_t, std::span<const double> sin_t,
            std::span<double> d, std::span<double> q) noexcept {
  active().rotate(alpha.data(), beta.data(), cos_t.data(), sin_t.data(),
                  d.data(), q.data(), alpha.size());
}

LagMoments lag_moments(std::span<const double> x, double shift) noexcept {
  return active().lag_moments(x.data(), x.size(), shift);
}

}  // namespace faultnet::kernels
