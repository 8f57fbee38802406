// test_control.cpp: profile synthesis — target geometry, certified replay,
// and the periodic-orbit iteration.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "benard/aligned.hpp"
#include "benard/control.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/noise.hpp"
#include "benard/norms.hpp"
#include "benard/stepper.hpp"
#include "benard/stokes.hpp"

namespace benard {
namespace {

struct ControlFixture {
  Grid grid{16, 16, 16};
  StokesSolver stokes{grid, 1.0e4};
  NoiseBasis basis;
  StepperOptions sopt;
  ControlOptions copt;

  ControlFixture() : basis(grid, noise_options()) {
    sopt.rayleigh = 1.0e4;
    sopt.t_bottom = 0.165;
    sopt.t_top = 0.0;
    sopt.substeps = 32;
    copt.trials = 2;
    copt.trial_units = 2;
    copt.max_periodic_units = 16;
    copt.min_pass = 2;
  }
  static NoiseOptions noise_options() {
    NoiseOptions o;
    o.m = 8;
    o.amplitude = 150.0;
    return o;
  }
};

TEST(Control, ChiRampsBetweenThePlateValues) {
  ControlFixture fx;
  BoundaryController ctl(fx.grid, fx.stokes, fx.sopt, fx.basis, fx.copt);
  const std::vector<double>& chi = ctl.chi();
  ASSERT_EQ(chi.size(), static_cast<std::size_t>(fx.grid.nz()));
  const double h = fx.grid.h();
  // Flat at the bottom value below eps1, flat at the top value above eps2,
  // monotone in between.
  EXPECT_DOUBLE_EQ(chi[0], fx.sopt.t_bottom);
  for (int j = 0; j <= fx.grid.n3(); ++j) {
    const double x3 = j * h;
    if (x3 <= fx.copt.eps1) EXPECT_DOUBLE_EQ(chi[j], fx.sopt.t_bottom);
    if (x3 >= fx.copt.eps2) EXPECT_DOUBLE_EQ(chi[j], fx.sopt.t_top);
    if (j > 0) EXPECT_LE(chi[j], chi[j - 1] + 1.0e-15);
  }
}

TEST(Control, TargetProfileCarriesNoFlow) {
  ControlFixture fx;
  BoundaryController ctl(fx.grid, fx.stokes, fx.sopt, fx.basis, fx.copt);
  const ScalarField& target = ctl.target();
  ComplexArray u1(fx.grid.n_spec()), u2(fx.grid.n_spec()),
      u3(fx.grid.n_spec());
  fx.stokes.apply_M(target.spec(), u1.data(), u2.data(), u3.data());
  const double un = std::sqrt(std::pow(l2_norm(fx.grid, u1.data()), 2) +
                              std::pow(l2_norm(fx.grid, u2.data()), 2) +
                              std::pow(l2_norm(fx.grid, u3.data()), 2));
  EXPECT_LE(un, 1.0e-10 * l2_norm(fx.grid, target.spec()));
}

TEST(Control, ReplayReproducesTheCertifiedUnitBitwise) {
  ControlFixture fx;
  BoundaryController ctl(fx.grid, fx.stokes, fx.sopt, fx.basis, fx.copt);
  ScalarField a(fx.grid), b(fx.grid);
  a.zero();
  a.add_scaled(ctl.target(), 1.0);
  b.zero();
  b.add_scaled(ctl.target(), 1.0);

  double increment = 0.0;
  const std::vector<double> coeffs =
      ctl.control_unit(a.spec(), 0.0, 1, {}, &increment);
  ASSERT_FALSE(coeffs.empty());
  EXPECT_GT(increment, 0.0);

  ctl.replay_unit(b.spec(), 0.0, coeffs);
  EXPECT_EQ(0, std::memcmp(a.spec(), b.spec(),
                           fx.grid.n_spec() * sizeof(std::complex<double>)));
}

TEST(Control, PeriodicIterationConvergesAndContracts) {
  ControlFixture fx;
  BoundaryController ctl(fx.grid, fx.stokes, fx.sopt, fx.basis, fx.copt);
  const ControlReport report = ctl.find_periodic(1);
  EXPECT_TRUE(report.periodic_converged);
  EXPECT_LE(report.periodic_residual, fx.copt.periodic_tol);
  EXPECT_LT(report.contraction_ratio, 1.0);
  EXPECT_GT(report.periodic_units, 0);
}

TEST(Control, FullRunSteersRandomTrialStates) {
  ControlFixture fx;
  BoundaryController ctl(fx.grid, fx.stokes, fx.sopt, fx.basis, fx.copt);
  const ControlReport report = ctl.run(3);
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.periodic_converged);
  EXPECT_EQ(report.replay_error, 0.0);
  EXPECT_EQ(report.trials_passed, 2);
  ASSERT_EQ(report.trial_ratios.size(), 2u);
  for (double r : report.trial_ratios) {
    EXPECT_LE(r, fx.copt.ratio_gate);
  }
  EXPECT_GT(report.a_min, 0.0);
  EXPECT_GE(report.l, 1);
}

}  // namespace
}  // namespace benard
