// markov.cpp: coupled chain ensembles and mixing-rate estimation.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/markov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <thread>

#include "benard/errors.hpp"
#include "benard/norms.hpp"
#include "benard/observables.hpp"
#include "benard/stokes.hpp"

namespace benard {

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  FitResult fit;
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return fit;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ssres = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ssres += r * r;
    }
    fit.r2 = 1.0 - ssres / syy;
  } else {
    fit.r2 = 1.0;  // constant data, perfectly fit by the constant line
  }
  return fit;
}

namespace {

// Fits ln(y) over the window [lo, hi] of integer abscissae and reports the
// decay rate (negated slope).
void fit_log_decay(const std::vector<double>& series, int lo, int hi,
                   double& rate, double& intercept, double& r2, int& points) {
  std::vector<double> xs, ys;
  const int top = std::min<int>(hi, static_cast<int>(series.size()) - 1);
  for (int k = std::max(lo, 0); k <= top; ++k) {
    const double v = series[k];
    if (v > 0.0) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(v));
    }
  }
  const FitResult fit = fit_line(xs, ys);
  rate = -fit.slope;
  intercept = fit.intercept;
  r2 = fit.r2;
  points = static_cast<int>(xs.size());
}

}  // namespace

MixingReport run_mixing(const Grid& grid, const StepperOptions& stepper_opt,
                        const NoiseBasis& basis, std::uint64_t seed,
                        const MixingOptions& opt) {
  if (opt.chains < 1 || opt.units < 1) {
    throw ConfigError("mixing: chains and units must be positive");
  }
  const int nchain = opt.chains;
  const int workers = std::clamp(opt.workers, 1, 2 * nchain);

  StokesSolver stokes(grid, stepper_opt.rayleigh);

  // States: ensemble A starts at the conduction state (zero deviation),
  // ensemble B by default in a random H1 ball around it (per-chain fields),
  // or at a caller-supplied common state. Chain i of both ensembles is
  // driven by the same noise realization (common random numbers), which is
  // what makes the pairwise coupling distance meaningful.
  std::vector<ComplexArray> state_a, state_b;
  state_a.reserve(nchain);
  state_b.reserve(nchain);
  ScalarField ball(grid);
  for (int i = 0; i < nchain; ++i) {
    state_a.emplace_back(grid.n_spec());
    state_b.emplace_back(grid.n_spec());
    switch (opt.init_b) {
      case MixInit::kConduction:
        break;
      case MixInit::kField:
        if (opt.init_field == nullptr) {
          throw ConfigError("mixing: field init requested without a field");
        }
        std::copy(opt.init_field, opt.init_field + grid.n_spec(),
                  state_b[i].data());
        break;
      case MixInit::kRandomBall:
        random_ball_field(grid, seed, stream::kInitialBall,
                          static_cast<std::uint64_t>(i), opt.ball_radius,
                          ball);
        std::copy(ball.spec(), ball.spec() + grid.n_spec(),
                  state_b[i].data());
        break;
    }
  }

  // One integrator per worker; chains are assigned to workers by a fixed
  // round-robin over the 2 * nchain (ensemble, chain) tasks.
  std::vector<std::unique_ptr<ThermalStepper>> steppers;
  steppers.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    steppers.push_back(
        std::make_unique<ThermalStepper>(grid, stokes, stepper_opt));
  }
  std::vector<double> worker_cfl(workers, 0.0);

  ObservableDictionary dict(grid, opt.observable_count, opt.dictionary_seed);

  MixingReport report;
  report.distance.reserve(opt.units + 1);
  report.coupling.reserve(opt.units + 1);

  ScalarField diff(grid);
  const auto record = [&]() {
    double dmax = 0.0;
    for (int i = 0; i < dict.size(); ++i) {
      double ma = 0.0, mb = 0.0;
      for (int c = 0; c < nchain; ++c) {
        ma += dict.evaluate(i, state_a[c].data());
        mb += dict.evaluate(i, state_b[c].data());
      }
      dmax = std::max(dmax, std::abs(ma - mb) / nchain);
    }
    report.distance.push_back(dmax);
    double h1 = 0.0;
    for (int c = 0; c < nchain; ++c) {
      for (std::size_t m = 0; m < grid.n_spec(); ++m) {
        diff.spec()[m] = state_a[c][m] - state_b[c][m];
      }
      h1 += h1_norm(grid, diff.spec());
    }
    report.coupling.push_back(h1 / nchain);
  };

  record();  // k = 0

  for (int unit = 0; unit < opt.units; ++unit) {
    const double t0 = static_cast<double>(unit);
    const auto run_task = [&](int task, int w) {
      const int c = task % nchain;
      std::complex<double>* s =
          (task < nchain ? state_a[c] : state_b[c]).data();
      NoiseSample sample(basis, seed, static_cast<std::uint64_t>(c),
                         static_cast<std::uint64_t>(unit),
                         opt.amplitude_scale);
      const Forcing forcing = [&sample](double t,
                                        std::complex<double>* out) {
        sample.add_eval(t - std::floor(t), out);
      };
      steppers[w]->advance_unit(s, t0, &forcing, nullptr);
      worker_cfl[w] = std::max(worker_cfl[w], steppers[w]->last_cfl());
    };

    if (workers == 1) {
      for (int task = 0; task < 2 * nchain; ++task) run_task(task, 0);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
          try {
            for (int task = w; task < 2 * nchain; task += workers) {
              run_task(task, w);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
    }
    record();
  }

  for (int w = 0; w < workers; ++w) {
    report.max_cfl = std::max(report.max_cfl, worker_cfl[w]);
  }

  fit_log_decay(report.distance, opt.fit_lo, opt.fit_hi, report.gamma,
                report.intercept, report.r2, report.fit_points);
  int cpoints = 0;
  double cintercept = 0.0;
  fit_log_decay(report.coupling, opt.fit_lo, opt.fit_hi, report.coupling_gamma,
                cintercept, report.coupling_r2, cpoints);
  return report;
}

}  // namespace benard
