// test_stokes.cpp: the velocity map M — kernel, adjointness,
// incompressibility, coupling blocks, and the dense reference solver.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "benard/aligned.hpp"
#include "benard/grid.hpp"
#include "benard/norms.hpp"
#include "benard/rng.hpp"
#include "benard/stokes.hpp"
#include "benard/stokes_oracle.hpp"
#include "benard/transforms.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

double velocity_norm(const Grid& g, const std::complex<double>* u1,
                     const std::complex<double>* u2,
                     const std::complex<double>* u3) {
  const double a = l2_norm(g, u1), b = l2_norm(g, u2), c = l2_norm(g, u3);
  return std::sqrt(a * a + b * b + c * c);
}

TEST(Stokes, HorizontalMeanProfilesCarryNoFlow) {
  Grid g(8, 8, 8);
  StokesSolver stokes(g, 1.0e4);
  ComplexArray theta(g.n_spec()), u1(g.n_spec()), u2(g.n_spec()),
      u3(g.n_spec());
  DrawStream draws(17, test::kTestStream, 0, 0);
  for (int trial = 0; trial < 10; ++trial) {
    theta.fill_zero();
    for (int j = 1; j < g.n3(); ++j) {
      theta[g.spec_index(0, 0, j)] = draws.next_uniform_sym();
    }
    stokes.apply_M(theta.data(), u1.data(), u2.data(), u3.data());
    const double un = velocity_norm(g, u1.data(), u2.data(), u3.data());
    EXPECT_LE(un, 1.0e-10 * l2_norm(g, theta.data()));
  }
}

TEST(Stokes, AdjointIdentity) {
  Grid g(8, 8, 8);
  Fft fft(g);
  StokesSolver stokes(g, 1.0e4);
  ComplexArray theta(g.n_spec()), u1(g.n_spec()), u2(g.n_spec()),
      u3(g.n_spec()), f1(g.n_spec()), f2(g.n_spec()), f3(g.n_spec()),
      mstar(g.n_spec());
  for (int trial = 0; trial < 20; ++trial) {
    test::random_state(g, fft, 31, 4 * trial + 0, theta.data());
    test::random_state(g, fft, 31, 4 * trial + 1, f1.data());
    test::random_state(g, fft, 31, 4 * trial + 2, f2.data());
    test::random_state(g, fft, 31, 4 * trial + 3, f3.data());
    stokes.apply_M(theta.data(), u1.data(), u2.data(), u3.data());
    stokes.apply_M_star(f1.data(), f2.data(), f3.data(), mstar.data());
    const double lhs = l2_inner(g, u1.data(), f1.data()) +
                       l2_inner(g, u2.data(), f2.data()) +
                       l2_inner(g, u3.data(), f3.data());
    const double rhs = l2_inner(g, theta.data(), mstar.data());
    const double scale =
        l2_norm(g, theta.data()) *
        velocity_norm(g, f1.data(), f2.data(), f3.data());
    EXPECT_LE(std::abs(lhs - rhs), 1.0e-10 * scale);
  }
}

TEST(Stokes, VelocityIsDiscretelyDivergenceFree) {
  Grid g(8, 8, 8);
  Fft fft(g);
  StokesSolver stokes(g, 1.0e4);
  ComplexArray theta(g.n_spec()), u1(g.n_spec()), u2(g.n_spec()),
      u3(g.n_spec()), div(g.n_spec());
  test::random_state(g, fft, 51, 0, theta.data());
  stokes.apply_M(theta.data(), u1.data(), u2.data(), u3.data());
  divergence(g, u1.data(), u2.data(), u3.data(), div.data());
  const double un = velocity_norm(g, u1.data(), u2.data(), u3.data());
  EXPECT_GT(un, 0.0);
  EXPECT_LE(l2_norm(g, div.data()), 1.0e-12 * un);
}

TEST(Stokes, WallPlanesAreExactlyZero) {
  Grid g(8, 8, 8);
  Fft fft(g);
  StokesSolver stokes(g, 1.0e4);
  ComplexArray theta(g.n_spec()), u1(g.n_spec()), u2(g.n_spec()),
      u3(g.n_spec());
  test::random_state(g, fft, 52, 0, theta.data());
  stokes.apply_M(theta.data(), u1.data(), u2.data(), u3.data());
  for (const Mode& m : g.modes()) {
    for (int j : {0, g.n3()}) {
      EXPECT_EQ(u1[m.offset + j], std::complex<double>(0.0, 0.0));
      EXPECT_EQ(u2[m.offset + j], std::complex<double>(0.0, 0.0));
      EXPECT_EQ(u3[m.offset + j], std::complex<double>(0.0, 0.0));
    }
  }
}

TEST(Stokes, LinearInTheInput) {
  Grid g(8, 8, 8);
  Fft fft(g);
  StokesSolver stokes(g, 1.0e4);
  ComplexArray theta(g.n_spec()), u3a(g.n_spec()), u3b(g.n_spec());
  test::random_state(g, fft, 53, 0, theta.data());
  stokes.apply_M3(theta.data(), u3a.data());
  for (std::size_t i = 0; i < g.n_spec(); ++i) theta[i] *= -2.5;
  stokes.apply_M3(theta.data(), u3b.data());
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.n_spec(); ++i) {
    dev = std::max(dev, std::abs(u3b[i] + 2.5 * u3a[i]));
    scale = std::max(scale, std::abs(u3b[i]));
  }
  EXPECT_LE(dev, 1.0e-12 * scale);
}

TEST(Stokes, CouplingBlocksAreSymmetric) {
  Grid g(8, 8, 8);
  StokesSolver stokes(g, 1.0e4);
  const int ni = stokes.interior();
  const auto& modes = g.modes();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const auto& block = stokes.coupling_block(m);
    ASSERT_EQ(block.size(), static_cast<std::size_t>(ni) * ni);
    double scale = 0.0;
    for (double v : block) scale = std::max(scale, std::abs(v));
    if (modes[m].kappa2 == 0.0) {
      EXPECT_EQ(scale, 0.0);
      continue;
    }
    for (int i = 0; i < ni; ++i) {
      for (int j = i + 1; j < ni; ++j) {
        EXPECT_LE(std::abs(block[i * ni + j] - block[j * ni + i]),
                  1.0e-12 * scale);
      }
    }
  }
}

TEST(Stokes, AgreesWithDenseReference) {
  Grid g(8, 8, 8);
  Fft fft(g);
  StokesSolver fast(g, 1.0e4);
  StokesOracle dense(g, 1.0e4);
  ComplexArray theta(g.n_spec());
  ComplexArray a1(g.n_spec()), a2(g.n_spec()), a3(g.n_spec());
  ComplexArray b1(g.n_spec()), b2(g.n_spec()), b3(g.n_spec());
  for (int trial = 0; trial < 3; ++trial) {
    test::random_state(g, fft, 61, trial, theta.data());
    fast.apply_M(theta.data(), a1.data(), a2.data(), a3.data());
    dense.apply_M(theta.data(), b1.data(), b2.data(), b3.data());
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n_spec(); ++i) {
      dev = std::max(dev, std::abs(a1[i] - b1[i]));
      dev = std::max(dev, std::abs(a2[i] - b2[i]));
      dev = std::max(dev, std::abs(a3[i] - b3[i]));
    }
    const double scale = velocity_norm(g, a1.data(), a2.data(), a3.data());
    EXPECT_GT(scale, 0.0);
    EXPECT_LE(dev, 1.0e-9 * scale);
  }
}

TEST(Stokes, QuarticSolveMatchesCouplingBlock) {
  // coupling_block is Ra kappa^2 B^{-1}; applying it to a basis vector must
  // agree with quartic_solve on the same right-hand side.
  Grid g(8, 8, 8);
  StokesSolver stokes(g, 1.0e4);
  const int ni = stokes.interior();
  const auto& modes = g.modes();
  std::size_t pick = 0;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (modes[m].kappa2 == 2.0) pick = m;
  }
  ASSERT_GT(modes[pick].kappa2, 0.0);
  const auto& block = stokes.coupling_block(pick);
  std::vector<std::complex<double>> rhs(ni, 0.0), v(ni, 0.0);
  rhs[ni / 2] = 1.0;
  stokes.quartic_solve(pick, rhs.data(), v.data());
  const double factor = 1.0e4 * modes[pick].kappa2;
  for (int i = 0; i < ni; ++i) {
    EXPECT_NEAR(factor * v[i].real(), block[i * ni + ni / 2], 1.0e-8);
    EXPECT_NEAR(v[i].imag(), 0.0, 1.0e-14);
  }
}

}  // namespace
}  // namespace benard
