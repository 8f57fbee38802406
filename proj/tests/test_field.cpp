// test_field.cpp: scalar-field invariants (dealiasing, linear ops).
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <complex>

#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/norms.hpp"
#include "benard/transforms.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

TEST(Field, DealiasZeroesInactiveModes) {
  Grid g(8, 8, 8);
  ScalarField f(g);
  for (std::size_t i = 0; i < g.n_spec(); ++i) f.spec()[i] = {1.0, -2.0};
  f.dealias();
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n_half2(); ++i2) {
      for (int j = 0; j <= g.n3(); ++j) {
        const std::complex<double> v = f.spec()[g.spec_index(i1, i2, j)];
        if (g.is_active(i1, i2)) {
          EXPECT_EQ(v, std::complex<double>(1.0, -2.0));
        } else {
          EXPECT_EQ(v, std::complex<double>(0.0, 0.0));
        }
      }
    }
  }
}

TEST(Field, FromPhysicalIsBandLimited) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField f(g);
  test::random_state(g, fft, 9, 0, f.spec());
  for (int i1 = 0; i1 < g.n1(); ++i1) {
    for (int i2 = 0; i2 < g.n_half2(); ++i2) {
      if (g.is_active(i1, i2)) continue;
      for (int j = 0; j <= g.n3(); ++j) {
        EXPECT_EQ(f.spec()[g.spec_index(i1, i2, j)],
                  std::complex<double>(0.0, 0.0));
      }
    }
  }
}

TEST(Field, LinearOps) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField a(g), b(g), c(g);
  test::random_state(g, fft, 1, 0, a.spec());
  test::random_state(g, fft, 1, 1, b.spec());
  // c = 2 a - 3 b, checked coefficient-wise.
  c.zero();
  c.add_scaled(a, 2.0);
  c.add_scaled(b, -3.0);
  ScalarField d(g);
  d.zero();
  d.add_scaled(a, 1.0);
  d.scale(2.0);
  d.add_scaled(b, -3.0);
  for (std::size_t i = 0; i < g.n_spec(); ++i) {
    EXPECT_NEAR(std::abs(c.spec()[i] - d.spec()[i]), 0.0, 1.0e-15);
  }
  // Norm homogeneity.
  EXPECT_NEAR(l2_norm(g, d.spec()), l2_norm(g, c.spec()), 1.0e-13);
  ScalarField e(g);
  e.zero();
  e.add_scaled(a, 5.0);
  EXPECT_NEAR(h1_norm(g, e.spec()), 5.0 * h1_norm(g, a.spec()),
              1.0e-12 * h1_norm(g, e.spec()));
}

TEST(Field, H1DominatesL2) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField a(g);
  test::random_state(g, fft, 2, 0, a.spec());
  EXPECT_GE(h1_norm(g, a.spec()), l2_norm(g, a.spec()));
}

}  // namespace
}  // namespace benard
