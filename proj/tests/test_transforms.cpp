// test_transforms.cpp: transform round trips, coefficient conventions,
// Parseval consistency, and the derivative stencils.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "benard/aligned.hpp"
#include "benard/derivatives.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/norms.hpp"
#include "benard/rng.hpp"
#include "benard/transforms.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

TEST(Transforms, RoundTripIsExact) {
  Grid g(8, 8, 8);
  Fft fft(g);
  RealArray phys(g.n_phys()), back(g.n_phys());
  DrawStream draws(3, test::kTestStream, 0, 0);
  for (std::size_t i = 0; i < g.n_phys(); ++i) phys[i] = draws.next_uniform_sym();
  ComplexArray spec(g.n_spec());
  fft.forward(phys.data(), spec.data());
  fft.backward(spec.data(), back.data());
  double dev = 0.0;
  for (std::size_t i = 0; i < g.n_phys(); ++i) {
    dev = std::max(dev, std::abs(back[i] - phys[i]));
  }
  EXPECT_LE(dev, 1.0e-12);
}

TEST(Transforms, PlaneWaveCoefficient) {
  // cos(k . x) phi(x3) must land on the (k1, k2) column with coefficient
  // phi/2 (the conjugate half carries the other 1/2).
  Grid g(8, 8, 8);
  Fft fft(g);
  const int k1 = 2, k2 = 1;
  RealArray phys(g.n_phys());
  for (int j = 0; j <= g.n3(); ++j) {
    const double phi = std::sin(Grid::kPi * j * g.h());
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        const double arg = k1 * (i1 * g.dx1()) + k2 * (i2 * g.dx2());
        phys[g.phys_index(i1, i2, j)] = std::cos(arg) * phi;
      }
    }
  }
  ComplexArray spec(g.n_spec());
  fft.forward(phys.data(), spec.data());
  for (int j = 0; j <= g.n3(); ++j) {
    const double phi = std::sin(Grid::kPi * j * g.h());
    const std::complex<double> got = spec[g.spec_index(k1, k2, j)];
    EXPECT_NEAR(got.real(), 0.5 * phi, 1.0e-12);
    EXPECT_NEAR(got.imag(), 0.0, 1.0e-12);
  }
  // Nothing elsewhere.
  for (int j = 0; j <= g.n3(); ++j) spec[g.spec_index(k1, k2, j)] = 0.0;
  double rest = 0.0;
  for (std::size_t i = 0; i < g.n_spec(); ++i) rest = std::max(rest, std::abs(spec[i]));
  EXPECT_LE(rest, 1.0e-12);
}

TEST(Transforms, ConjugateMirrorOnRealData) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField f(g);
  test::random_state(g, fft, 11, 0, f.spec());
  for (int i1 = 1; i1 < g.n1(); ++i1) {
    if (!g.is_active(i1, 0)) continue;
    const int mi = g.mirror_i1(i1);
    for (int j = 0; j <= g.n3(); ++j) {
      const std::complex<double> a = f.spec()[g.spec_index(i1, 0, j)];
      const std::complex<double> b = f.spec()[g.spec_index(mi, 0, j)];
      EXPECT_NEAR(a.real(), b.real(), 1.0e-13);
      EXPECT_NEAR(a.imag(), -b.imag(), 1.0e-13);
    }
  }
}

TEST(Norms, ParsevalMatchesPhysicalQuadrature) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField f(g);
  test::random_state(g, fft, 5, 1, f.spec());
  RealArray phys(g.n_phys());
  f.to_physical(fft, phys.data());
  // Physical quadrature: horizontal mean times the area, trapezoid vertically.
  double quad = 0.0;
  for (int j = 0; j <= g.n3(); ++j) {
    double plane = 0.0;
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        const double v = phys[g.phys_index(i1, i2, j)];
        plane += v * v;
      }
    }
    quad += g.wt(j) * g.h() * plane / (g.n1() * g.n2());
  }
  quad *= Grid::kArea;
  const double n2 = l2_norm(g, f.spec());
  EXPECT_NEAR(n2 * n2, quad, 1.0e-12 * quad);
}

TEST(Norms, ClosedFormColumnNorms) {
  // f = sin(pi x3) as the horizontal mean: discrete L2 and the Dirichlet-form
  // H1 have closed forms through the discrete sine eigenvalue.
  Grid g(8, 8, 16);
  ScalarField f(g);
  f.zero();
  const double h = g.h();
  for (int j = 0; j <= g.n3(); ++j) {
    f.spec()[g.spec_index(0, 0, j)] = std::sin(Grid::kPi * j * h);
  }
  double sum2 = 0.0;
  for (int j = 0; j <= g.n3(); ++j) {
    const double v = std::sin(Grid::kPi * j * h);
    sum2 += g.wt(j) * v * v;
  }
  const double l2_expect = std::sqrt(Grid::kArea * h * sum2);
  EXPECT_NEAR(l2_norm(g, f.spec()), l2_expect, 1.0e-13 * l2_expect);

  // Dirichlet form of the discrete sine mode: lambda_h * sum_j f_j^2 with
  // lambda_h = 4 sin^2(pi h / 2) / h^2 (kappa = 0, so no horizontal part).
  const double lam = 4.0 * std::pow(std::sin(Grid::kPi * h / 2.0), 2) / (h * h);
  const double h1_expect =
      std::sqrt(Grid::kArea * h * sum2 * (1.0 + lam));
  EXPECT_NEAR(h1_norm(g, f.spec()), h1_expect, 1.0e-12 * h1_expect);
}

TEST(Derivatives, HorizontalSpectral) {
  Grid g(8, 8, 8);
  Fft fft(g);
  // f = cos(2 x1 + x2): d/dx1 = -2 sin(2 x1 + x2), d/dx2 = -sin(2 x1 + x2).
  RealArray phys(g.n_phys()), ref(g.n_phys()), got(g.n_phys());
  for (int j = 0; j <= g.n3(); ++j) {
    for (int i1 = 0; i1 < g.n1(); ++i1) {
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        const double arg = 2.0 * (i1 * g.dx1()) + (i2 * g.dx2());
        phys[g.phys_index(i1, i2, j)] = std::cos(arg);
        ref[g.phys_index(i1, i2, j)] = -2.0 * std::sin(arg);
      }
    }
  }
  ComplexArray spec(g.n_spec()), dspec(g.n_spec());
  fft.forward(phys.data(), spec.data());
  ddx_h(g, 1, spec.data(), dspec.data());
  fft.backward(dspec.data(), got.data());
  for (std::size_t i = 0; i < g.n_phys(); ++i) {
    ASSERT_NEAR(got[i], ref[i], 1.0e-11);
  }
}

TEST(Derivatives, VerticalStencils) {
  Grid g(8, 8, 8);
  ComplexArray in(g.n_spec()), out(g.n_spec());
  const double h = g.h();
  // Quadratic column x3^2: centered first difference is exact (2 x3),
  // second difference is exactly 2.
  for (int j = 0; j <= g.n3(); ++j) {
    in[g.spec_index(0, 0, j)] = (j * h) * (j * h);
  }
  ddx3_clamped(g, in.data(), out.data());
  for (int j = 1; j < g.n3(); ++j) {
    EXPECT_NEAR(out[g.spec_index(0, 0, j)].real(), 2.0 * j * h, 1.0e-12);
  }
  EXPECT_EQ(out[g.spec_index(0, 0, 0)], std::complex<double>(0.0, 0.0));
  EXPECT_EQ(out[g.spec_index(0, 0, g.n3())], std::complex<double>(0.0, 0.0));

  d2dx3_interior(g, in.data(), out.data());
  for (int j = 1; j < g.n3(); ++j) {
    EXPECT_NEAR(out[g.spec_index(0, 0, j)].real(), 2.0, 1.0e-10);
  }
}

}  // namespace
}  // namespace benard
