// test_tangent.cpp: linearization correctness, exact transposition of the
// backward sweep, the duality identity, and the reachability spectrum.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "benard/aligned.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/markov.hpp"
#include "benard/noise.hpp"
#include "benard/norms.hpp"
#include "benard/observables.hpp"
#include "benard/stepper.hpp"
#include "benard/stokes.hpp"
#include "benard/tangent.hpp"
#include "benard/trajectory.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

struct TangentFixture {
  Grid grid{16, 16, 16};
  StokesSolver stokes{grid, 1.0e4};
  NoiseBasis basis;
  StepperOptions sopt;

  TangentFixture() : basis(grid, noise_options()) {
    sopt.rayleigh = 1.0e4;
    sopt.t_bottom = 0.165;
    sopt.t_top = 0.0;
    sopt.substeps = 32;
  }
  static NoiseOptions noise_options() {
    NoiseOptions o;
    o.m = 16;
    o.amplitude = 150.0;
    return o;
  }

  FrozenTrajectory record_base(std::uint64_t seed) {
    ThermalStepper stepper(grid, stokes, sopt);
    ScalarField s(grid);
    s.zero();
    NoiseSample sample(basis, seed, 0, 0, 0.5);
    const Forcing forcing = [&](double t, std::complex<double>* out) {
      sample.add_eval(t - std::floor(t), out);
    };
    return FrozenTrajectory::record_unit(stepper, s.spec(), 0.0, &forcing);
  }
};

TEST(Tangent, HomogeneousDualityIsExact) {
  // With no forcing the identity <theta(1), psi1> = <theta(0), psi(0)> has no
  // quadrature term, so it must hold to round-off: the backward sweep is the
  // exact transpose of the forward tangent map.
  TangentFixture fx;
  FrozenTrajectory traj = fx.record_base(3);

  Fft fft(fx.grid);
  ScalarField theta(fx.grid), psi(fx.grid);
  test::random_state(fx.grid, fft, 21, 0, theta.spec(), 0.01);
  ComplexArray theta0(fx.grid.n_spec());
  for (std::size_t i = 0; i < fx.grid.n_spec(); ++i) {
    theta0[i] = theta.spec()[i];
  }
  test::random_state(fx.grid, fft, 21, 1, psi.spec(), 1.0);
  psi.scale(1.0 / l2_norm(fx.grid, psi.spec()));
  ComplexArray psi1(fx.grid.n_spec());
  for (std::size_t i = 0; i < fx.grid.n_spec(); ++i) psi1[i] = psi.spec()[i];

  TangentSolver tangent(fx.grid, fx.stokes, fx.sopt);
  tangent.advance_unit(traj, 0.0, theta.spec(), nullptr);
  const double lhs = l2_inner(fx.grid, theta.spec(), psi1.data());

  DualSolver dual(fx.grid, fx.stokes, fx.sopt);
  dual.reverse_unit(traj, 0.0, psi.spec(), nullptr);
  const double rhs = l2_inner(fx.grid, theta0.data(), psi.spec());

  const double scale = l2_norm(fx.grid, theta0.data());
  EXPECT_LE(std::abs(lhs - rhs), 1.0e-11 * scale);
}

TEST(Tangent, MatchesFiniteDifferencesAtFirstOrder) {
  // theta is the exact derivative of the unit flow map, so the forward
  // difference quotient converges to it linearly in epsilon.
  TangentFixture fx;
  NoiseSample sample(fx.basis, 5, 0, 0, 0.5);
  const Forcing forcing = [&](double t, std::complex<double>* out) {
    sample.add_eval(t - std::floor(t), out);
  };

  ScalarField base(fx.grid);
  base.zero();
  FrozenTrajectory traj = [&] {
    ThermalStepper stepper(fx.grid, fx.stokes, fx.sopt);
    ScalarField s(fx.grid);
    s.zero();
    return FrozenTrajectory::record_unit(stepper, s.spec(), 0.0, &forcing);
  }();
  ComplexArray end0(fx.grid.n_spec());
  traj.get_frame(fx.sopt.substeps, end0.data());

  ScalarField dir(fx.grid);
  random_ball_field(fx.grid, 17, test::kTestStream, 0, 0.05, dir);

  ScalarField theta(fx.grid);
  theta.zero();
  theta.add_scaled(dir, 1.0);
  TangentSolver tangent(fx.grid, fx.stokes, fx.sopt);
  tangent.advance_unit(traj, 0.0, theta.spec(), nullptr);

  std::vector<double> ln_eps, ln_err;
  for (double eps : {1.0e-2, 1.0e-3, 1.0e-4}) {
    ThermalStepper stepper(fx.grid, fx.stokes, fx.sopt);
    ScalarField s(fx.grid);
    s.zero();
    s.add_scaled(dir, eps);
    stepper.advance_unit(s.spec(), 0.0, &forcing, nullptr);
    // err = || (flow(S0 + eps dir) - flow(S0)) / eps - theta(1) ||.
    ScalarField diff(fx.grid);
    diff.zero();
    for (std::size_t i = 0; i < fx.grid.n_spec(); ++i) {
      diff.spec()[i] = (s.spec()[i] - end0[i]) / eps - theta.spec()[i];
    }
    const double err = l2_norm(fx.grid, diff.spec());
    ASSERT_GT(err, 0.0);
    ln_eps.push_back(std::log(eps));
    ln_err.push_back(std::log(err));
  }
  const FitResult fit = fit_line(ln_eps, ln_err);
  EXPECT_GE(fit.slope, 0.9);
  EXPECT_LE(fit.slope, 1.1);
}

TEST(Tangent, DualityResidualIsSmallAndNormalized) {
  TangentFixture fx;
  FrozenTrajectory traj = fx.record_base(7);
  for (std::uint64_t pair = 0; pair < 3; ++pair) {
    const DualityResult r =
        duality_check(fx.grid, fx.stokes, fx.sopt, traj, fx.basis, 7, pair);
    EXPECT_GT(r.normalizer, 0.0);
    // The normalizer bounds the accumulated pairing (Cauchy-Schwarz).
    EXPECT_GE(r.normalizer, std::abs(r.rhs) * (1.0 - 1.0e-12));
    EXPECT_LE(r.residual, 1.0e-5);
    // lhs and rhs agree far better than either side's own size.
    EXPECT_NEAR(r.lhs, r.rhs,
                1.0e-4 * std::max(std::abs(r.lhs), std::abs(r.rhs)) +
                    1.0e-18);
  }
}

TEST(Tangent, ReachabilitySpectrumIsNondegenerate) {
  TangentFixture fx;
  FrozenTrajectory traj = fx.record_base(11);
  const DensityReport report =
      density_diagnostic(fx.grid, fx.stokes, fx.sopt, traj, fx.basis, 4);
  EXPECT_EQ(report.d, 4);
  EXPECT_EQ(report.m, 16);
  ASSERT_EQ(report.singular_values.size(), 4u);
  for (std::size_t i = 1; i < report.singular_values.size(); ++i) {
    EXPECT_LE(report.singular_values[i], report.singular_values[i - 1]);
  }
  EXPECT_GT(report.singular_values.back(), 1.0e-10);
}

TEST(Tangent, ZeroDatumStaysZero) {
  TangentFixture fx;
  FrozenTrajectory traj = fx.record_base(13);
  ScalarField theta(fx.grid);
  theta.zero();
  TangentSolver tangent(fx.grid, fx.stokes, fx.sopt);
  tangent.advance_unit(traj, 0.0, theta.spec(), nullptr);
  EXPECT_EQ(l2_norm(fx.grid, theta.spec()), 0.0);
}

}  // namespace
}  // namespace benard
