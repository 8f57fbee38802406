// test_markov.cpp: line fitting and the coupled-ensemble mixing driver.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "benard/errors.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/markov.hpp"
#include "benard/noise.hpp"
#include "benard/observables.hpp"
#include "benard/stepper.hpp"
#include "benard/stokes.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

TEST(FitLine, RecoversAnExactLine) {
  std::vector<double> x, y;
  for (int i = 0; i < 9; ++i) {
    x.push_back(i);
    y.push_back(3.0 * i - 2.0);
  }
  const FitResult fit = fit_line(x, y);
  EXPECT_NEAR(fit.slope, 3.0, 1.0e-12);
  EXPECT_NEAR(fit.intercept, -2.0, 1.0e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1.0e-12);
}

TEST(FitLine, ConstantSeriesHasZeroSlope) {
  std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  std::vector<double> y{5.0, 5.0, 5.0, 5.0};
  const FitResult fit = fit_line(x, y);
  EXPECT_NEAR(fit.slope, 0.0, 1.0e-14);
  EXPECT_NEAR(fit.intercept, 5.0, 1.0e-12);
  EXPECT_DOUBLE_EQ(fit.r2, 1.0);
}

TEST(FitLine, DegenerateInputsAreHarmless) {
  const FitResult empty = fit_line({}, {});
  EXPECT_EQ(empty.slope, 0.0);
  const FitResult one = fit_line({1.0}, {2.0});
  EXPECT_EQ(one.slope, 0.0);
}

struct MixFixture {
  Grid grid{8, 8, 16};
  StokesSolver stokes{grid, 1.0e4};
  NoiseBasis basis;
  StepperOptions sopt;

  MixFixture() : basis(grid, noise_options()) {
    sopt.rayleigh = 1.0e4;
    sopt.t_bottom = 0.165;
    sopt.t_top = 0.0;
    sopt.substeps = 16;
  }
  static NoiseOptions noise_options() {
    NoiseOptions o;
    o.m = 8;
    o.amplitude = 150.0;
    return o;
  }
  static MixingOptions mixing_options() {
    MixingOptions m;
    m.chains = 3;
    m.units = 4;
    m.fit_lo = 1;
    m.fit_hi = 3;
    m.observable_count = 6;
    return m;
  }
};

TEST(Mixing, EqualStartsStayExactlyCoupled) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  mopt.init_b = MixInit::kConduction;  // both ensembles from the same state
  const MixingReport report = run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt);
  ASSERT_EQ(report.distance.size(), 5u);
  for (double d : report.distance) EXPECT_EQ(d, 0.0);
  for (double c : report.coupling) EXPECT_EQ(c, 0.0);
  EXPECT_EQ(report.fit_points, 0);
  EXPECT_EQ(report.gamma, 0.0);
}

TEST(Mixing, InitialCouplingDistanceIsTheBallRadius) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  mopt.units = 1;
  mopt.ball_radius = 0.02;
  const MixingReport report = run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt);
  // Ensemble A sits at the conduction state (deviation 0), so each paired H1
  // distance at k = 0 is exactly the ball radius.
  EXPECT_NEAR(report.coupling[0], 0.02, 1.0e-13);
}

TEST(Mixing, WorkerCountDoesNotChangeResults) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  MixingOptions mopt3 = mopt;
  mopt3.workers = 3;
  const MixingReport a = run_mixing(fx.grid, fx.sopt, fx.basis, 9, mopt);
  const MixingReport b = run_mixing(fx.grid, fx.sopt, fx.basis, 9, mopt3);
  ASSERT_EQ(a.distance.size(), b.distance.size());
  for (std::size_t k = 0; k < a.distance.size(); ++k) {
    EXPECT_EQ(a.distance[k], b.distance[k]);
    EXPECT_EQ(a.coupling[k], b.coupling[k]);
  }
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.max_cfl, b.max_cfl);
}

TEST(Mixing, RerunsAreBitIdentical) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  const MixingReport a = run_mixing(fx.grid, fx.sopt, fx.basis, 9, mopt);
  const MixingReport b = run_mixing(fx.grid, fx.sopt, fx.basis, 9, mopt);
  for (std::size_t k = 0; k < a.distance.size(); ++k) {
    EXPECT_EQ(a.distance[k], b.distance[k]);
    EXPECT_EQ(a.coupling[k], b.coupling[k]);
  }
}

TEST(Mixing, FieldInitRequiresAField) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  mopt.init_b = MixInit::kField;
  mopt.init_field = nullptr;
  EXPECT_THROW(run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt), ConfigError);

  ScalarField f(fx.grid);
  random_ball_field(fx.grid, 5, test::kTestStream, 0, 0.01, f);
  mopt.init_field = f.spec();
  mopt.units = 1;
  const MixingReport report = run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt);
  EXPECT_NEAR(report.coupling[0], 0.01, 1.0e-13);
}

TEST(Mixing, RejectsEmptyEnsembles) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  mopt.chains = 0;
  EXPECT_THROW(run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt), ConfigError);
}

TEST(Mixing, DistancesDecayOnAContractingChain) {
  MixFixture fx;
  MixingOptions mopt = MixFixture::mixing_options();
  mopt.units = 6;
  mopt.fit_lo = 1;
  mopt.fit_hi = 5;
  const MixingReport report = run_mixing(fx.grid, fx.sopt, fx.basis, 5, mopt);
  EXPECT_GT(report.coupling_gamma, 0.0);
  EXPECT_LT(report.coupling.back(), report.coupling.front());
}

}  // namespace
}  // namespace benard
