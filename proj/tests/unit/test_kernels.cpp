#include <cmath>
#include <vector>

#include "faultnet/kernels.hpp"
#include "test_support.hpp"

namespace fk = faultnet::kernels;
using faultnet::test::random_vector;

namespace {

std::vector<const fk::KernelTable*> variants() {
  std::vector<const fk::KernelTable*> v;
  if (const auto* t = fk::avx2_table()) v.push_back(t);
  if (const auto* t = fk::neon_table()) v.push_back(t);
  return v;
}

void expect_close(double ref, double got) {
  EXPECT_NEAR(got, ref, 1e-12 * std::max(1.0, std::abs(ref)));
}

// Lengths around every vector-width boundary plus a long tail.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 101, 1000};

}  // namespace

TEST(Kernels, ActiveTableIsKnown) {
  const auto& a = fk::active();
  EXPECT_TRUE(a.name == "scalar" || a.name == "avx2" || a.name == "neon") << a.name;
  EXPECT_EQ(fk::scalar_table().name, "scalar");
}

TEST(Kernels, ReductionsMatchReference) {
  std::mt19937_64 gen(1);
  const auto& ref = fk::scalar_table();
  for (const auto* t : variants()) {
    for (std::size_t n : kSizes) {
      const auto x = random_vector(n, gen, -5, 5);
      const auto y = random_vector(n, gen, -5, 5);
      expect_close(ref.sum(x.data(), n), t->sum(x.data(), n));
      expect_close(ref.dot(x.data(), y.data(), n), t->dot(x.data(), y.data(), n));
      expect_close(ref.squared_distance(x.data(), y.data(), n),
                   t->squared_distance(x.data(), y.data(), n));
      const auto a = ref.lag_moments(x.data(), n, 0.25);
      const auto b = t->lag_moments(x.data(), n, 0.25);
      expect_close(a.sum, b.sum);
      expect_close(a.sumsq, b.sumsq);
      expect_close(a.cross, b.cross);
    }
  }
}

TEST(Kernels, ElementwiseBitIdentical) {
  std::mt19937_64 gen(2);
  const auto& ref = fk::scalar_table();
  for (const auto* t : variants()) {
    for (std::size_t n : kSizes) {
      const auto a = random_vector(n, gen), b = random_vector(n, gen), c = random_vector(n, gen);
      std::vector<double> al1(n), be1(n), al2(n), be2(n);
      ref.clarke(a.data(), b.data(), c.data(), al1.data(), be1.data(), n);
      t->clarke(a.data(), b.data(), c.data(), al2.data(), be2.data(), n);
      EXPECT_EQ(al1, al2);
      EXPECT_EQ(be1, be2);

      std::vector<double> d1(n), q1(n), d2(n), q2(n);
      ref.rotate(a.data(), b.data(), c.data(), al1.data(), d1.data(), q1.data(), n);
      t->rotate(a.data(), b.data(), c.data(), al1.data(), d2.data(), q2.data(), n);
      EXPECT_EQ(d1, d2);
      EXPECT_EQ(q1, q2);

      std::vector<double> y1 = c, y2 = c;
      ref.axpy(-0.37, a.data(), y1.data(), n);
      t->axpy(-0.37, a.data(), y2.data(), n);
      EXPECT_EQ(y1, y2);
    }
  }
}

TEST(Kernels, ScalarReferenceValues) {
  const auto& ref = fk::scalar_table();
  const double x[] = {1, 2, 3, 4};
  const double y[] = {2, 0, -1, 1};
  EXPECT_EQ(ref.sum(x, 4), 10.0);
  EXPECT_EQ(ref.dot(x, y, 4), 3.0);
  EXPECT_EQ(ref.squared_distance(x, y, 4), 1.0 + 4.0 + 16.0 + 9.0);
  const auto m = ref.lag_moments(x, 4, 2.5);  // centred: -1.5 -0.5 0.5 1.5
  EXPECT_DOUBLE_EQ(m.sum, 0.0);
  EXPECT_DOUBLE_EQ(m.sumsq, 5.0);
  EXPECT_DOUBLE_EQ(m.cross, 0.75 - 0.25 + 0.75);
}

TEST(Kernels, SpanFrontEndsUseActiveTable) {
  std::mt19937_64 gen(3);
  const auto x = random_vector(37, gen), y = random_vector(37, gen);
  expect_close(fk::scalar_table().dot(x.data(), y.data(), 37), fk::dot(x, y));
  expect_close(fk::scalar_table().squared_distance(x.data(), y.data(), 37),
               fk::squared_distance(x, y));
}
