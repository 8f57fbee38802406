// experiments.cpp: experiment drivers and configuration adapters.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "benard/checkpoint.hpp"
#include "benard/errors.hpp"
#include "benard/field.hpp"
#include "benard/norms.hpp"
#include "benard/rng.hpp"
#include "benard/stokes_oracle.hpp"
#include "benard/trajectory.hpp"

namespace benard {

// --- configuration adapters ------------------------------------------------

StepperOptions make_stepper_options(const RunConfig& c) {
  StepperOptions o;
  o.rayleigh = c.rayleigh;
  o.t_bottom = c.t_bottom;
  o.t_top = c.t_top;
  o.substeps = c.substeps;
  o.cfl_limit = c.cfl_limit;
  return o;
}

StepperOptions make_mix_stepper_options(const RunConfig& c) {
  StepperOptions o = make_stepper_options(c);
  o.substeps = c.mix_substeps;
  return o;
}

NoiseOptions make_noise_options(const RunConfig& c) {
  NoiseOptions o;
  o.m = c.noise_m;
  o.c = c.noise_c;
  o.b0 = c.noise_b0;
  o.s = c.noise_s;
  o.amplitude = c.noise_amplitude;
  return o;
}

MixingOptions make_mixing_options(const RunConfig& c) {
  MixingOptions o;
  o.chains = c.mix_chains;
  o.units = c.mix_units;
  o.fit_lo = c.mix_fit_lo;
  o.fit_hi = c.mix_fit_hi;
  o.observable_count = c.mix_observables;
  o.dictionary_seed = c.mix_dict_seed;
  o.ball_radius = c.mix_ball_radius;
  o.amplitude_scale = c.mix_amplitude_scale;
  o.workers = c.workers;
  return o;
}

ControlOptions make_control_options(const RunConfig& c) {
  ControlOptions o;
  o.eps1 = c.control_eps1;
  o.eps2 = c.control_eps2;
  o.l = c.control_l;
  o.trials = c.control_trials;
  o.trial_units = c.control_trial_units;
  o.trial_radius = c.control_trial_radius;
  o.max_periodic_units = c.control_max_periodic_units;
  o.periodic_tol = c.control_periodic_tol;
  o.sweep_gate = c.control_sweep_gate;
  o.ratio_gate = c.control_ratio_gate;
  o.min_pass = c.control_min_pass;
  return o;
}

std::vector<double> parse_number_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = csv.substr(pos, comma - pos);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("number list: cannot parse '" + item + "'");
    }
    while (used < item.size() &&
           std::isspace(static_cast<unsigned char>(item[used]))) {
      ++used;
    }
    if (used != item.size() || !(value > 0.0) || !std::isfinite(value)) {
      throw ConfigError("number list: entries must be positive numbers, got '" +
                        item + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("number list: empty");
  return out;
}

// --- forward simulation ----------------------------------------------------

namespace {

// Largest Courant number seen across the substeps of one unit block.
double advance_unit_tracked(ThermalStepper& stepper,
                            std::complex<double>* s_hat, double t0,
                            const Forcing* forcing) {
  double max_cfl = 0.0;
  Observer watch = [&](int substep, double, const std::complex<double>*) {
    if (substep > 0) max_cfl = std::max(max_cfl, stepper.last_cfl());
  };
  stepper.advance_unit(s_hat, t0, forcing, &watch);
  return max_cfl;
}

Forcing make_noise_forcing(const NoiseSample& sample) {
  return [&sample](double t, std::complex<double>* out) {
    sample.add_eval(t - std::floor(t), out);
  };
}

}  // namespace

SimulateReport run_simulate(const Grid& grid, const StokesSolver& stokes,
                            const StepperOptions& stepper_opt,
                            const NoiseBasis& basis, std::uint64_t seed,
                            const SimulateOptions& opt) {
  if (opt.units < 0) throw ConfigError("simulate: units must be nonnegative");
  if (opt.checkpoint_every < 0) {
    throw ConfigError("simulate: checkpoint interval must be nonnegative");
  }
  SimulateReport report;
  if (opt.units == 0) return report;
  ThermalStepper stepper(grid, stokes, stepper_opt);
  ScalarField s(grid);

  report.energy.push_back({0, 0.0, 0.0, 0.0});
  for (int k = 0; k < opt.units; ++k) {
    NoiseSample sample(basis, seed, opt.chain, static_cast<std::uint64_t>(k),
                       opt.amplitude_scale);
    Forcing forcing = make_noise_forcing(sample);
    double cfl = advance_unit_tracked(stepper, s.spec(),
                                      static_cast<double>(k), &forcing);
    report.max_cfl = std::max(report.max_cfl, cfl);
    report.energy.push_back({k + 1, l2_norm(grid, s.spec()),
                             h1_norm(grid, s.spec()), cfl});
    if (opt.checkpoint_every > 0 && (k + 1) % opt.checkpoint_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "state_%06d.bmix", k + 1);
      std::filesystem::path path =
          std::filesystem::path(opt.out_dir) / name;
      CheckpointMeta meta;
      meta.kind = "field";
      meta.time = static_cast<double>(k + 1);
      meta.step = static_cast<std::uint64_t>(k + 1);
      meta.seed = seed;
      meta.chain = opt.chain;
      meta.t_bottom = stepper_opt.t_bottom;
      meta.t_top = stepper_opt.t_top;
      save_checkpoint(path.string(), grid, meta,
                      {{"temperature_deviation", s.spec()}});
      report.checkpoints.push_back(path.string());
    }
  }
  return report;
}

std::string energy_csv(const SimulateReport& report) {
  std::string out = "unit,l2,h1,cfl\n";
  char line[128];
  for (const EnergyRow& row : report.energy) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n", row.unit,
                  row.l2, row.h1, row.cfl);
    out += line;
  }
  return out;
}

// --- ball entry times (dissipativity) ---------------------------------------

DissipativityReport run_dissipativity(const Grid& grid,
                                      const StokesSolver& stokes,
                                      const StepperOptions& stepper_opt,
                                      const NoiseBasis& basis,
                                      std::uint64_t seed,
                                      const DissipativityOptions& opt) {
  if (opt.radii.empty()) {
    throw ConfigError("dissipativity: no radii given");
  }
  if (!(opt.threshold > 0.0) || opt.max_units < 1) {
    throw ConfigError("dissipativity: threshold and budget must be positive");
  }

  // Unit-H1 profile sin(pi x3) in the horizontal-mean column; its image
  // under the velocity map is zero, so scaled copies decay linearly.
  ScalarField profile(grid);
  for (int j = 1; j < grid.n3(); ++j) {
    profile.spec()[grid.spec_index(0, 0, j)] =
        std::sin(Grid::kPi * grid.h() * j);
  }
  profile.scale(1.0 / h1_norm(grid, profile.spec()));

  DissipativityReport report;
  ThermalStepper stepper(grid, stokes, stepper_opt);
  ScalarField s(grid);
  for (std::size_t ri = 0; ri < opt.radii.size(); ++ri) {
    DissipativityRun run;
    run.radius = opt.radii[ri];
    s.zero();
    s.add_scaled(profile, run.radius);
    double h1 = h1_norm(grid, s.spec());
    run.h1.push_back(h1);
    if (h1 <= opt.threshold) {
      run.entered = true;
      run.entry_unit = 0;
    } else {
      for (int k = 0; k < opt.max_units; ++k) {
        double cfl = 0.0;
        if (opt.amplitude_scale > 0.0) {
          NoiseSample sample(basis, seed, static_cast<std::uint64_t>(ri),
                             static_cast<std::uint64_t>(k),
                             opt.amplitude_scale);
          Forcing forcing = make_noise_forcing(sample);
          cfl = advance_unit_tracked(stepper, s.spec(),
                                     static_cast<double>(k), &forcing);
        } else {
          cfl = advance_unit_tracked(stepper, s.spec(),
                                     static_cast<double>(k), nullptr);
        }
        report.max_cfl = std::max(report.max_cfl, cfl);
        h1 = h1_norm(grid, s.spec());
        run.h1.push_back(h1);
        if (h1 <= opt.threshold) {
          run.entered = true;
          run.entry_unit = k + 1;
          break;
        }
      }
    }
    report.runs.push_back(std::move(run));
  }

  report.all_entered =
      std::all_of(report.runs.begin(), report.runs.end(),
                  [](const DissipativityRun& r) { return r.entered; });

  // Ordering checks over every pair with strictly larger radius: entry
  // times must not decrease, and entry/R must not increase (a linear-in-R
  // entry law keeps that ratio constant; logarithmic growth shrinks it).
  report.non_decreasing = report.all_entered;
  report.sublinear = report.all_entered;
  for (std::size_t i = 0; i + 1 < report.runs.size() && report.all_entered;
       ++i) {
    for (std::size_t j = i + 1; j < report.runs.size(); ++j) {
      const DissipativityRun& a = report.runs[i];
      const DissipativityRun& b = report.runs[j];
      if (b.radius <= a.radius) continue;
      if (b.entry_unit < a.entry_unit) report.non_decreasing = false;
      if (a.entry_unit > 0 &&
          b.entry_unit * a.radius > a.entry_unit * b.radius) {
        report.sublinear = false;
      }
    }
  }

  if (report.all_entered && report.runs.size() >= 2) {
    std::vector<double> x, y;
    for (const DissipativityRun& r : report.runs) {
      x.push_back(std::log(r.radius + 2.0));
      y.push_back(static_cast<double>(r.entry_unit));
    }
    FitResult fit = fit_line(x, y);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.r2 = fit.r2;
  }

  report.ok = report.all_entered && report.non_decreasing &&
              report.sublinear && std::isfinite(report.slope) &&
              report.slope > 0.0;
  return report;
}

// --- duality sweep -----------------------------------------------------------

namespace {

FrozenTrajectory record_base_trajectory(const Grid& grid,
                                        const StokesSolver& stokes,
                                        const StepperOptions& stepper_opt,
                                        const NoiseBasis& basis,
                                        std::uint64_t seed,
                                        double traj_scale) {
  ThermalStepper stepper(grid, stokes, stepper_opt);
  ScalarField s(grid);
  NoiseSample sample(basis, seed, 0, 0, traj_scale);
  Forcing forcing = make_noise_forcing(sample);
  return FrozenTrajectory::record_unit(stepper, s.spec(), 0.0, &forcing);
}

}  // namespace

AdjointReport run_adjoint_check(const Grid& grid, const StokesSolver& stokes,
                                const StepperOptions& stepper_opt,
                                const NoiseBasis& basis, std::uint64_t seed,
                                const AdjointOptions& opt) {
  if (opt.pairs < 1) throw ConfigError("adjoint: pairs must be positive");
  int subset = std::min(opt.subset, opt.pairs);
  if (subset < 1) throw ConfigError("adjoint: subset must be positive");

  AdjointReport report;
  FrozenTrajectory base = record_base_trajectory(grid, stokes, stepper_opt,
                                                 basis, seed, opt.traj_scale);
  for (int p = 0; p < opt.pairs; ++p) {
    DualityResult r = duality_check(grid, stokes, stepper_opt, base, basis,
                                    seed, static_cast<std::uint64_t>(p));
    report.residuals.push_back(r.residual);
    report.max_residual = std::max(report.max_residual, r.residual);
  }

  std::vector<int> sweep = opt.sweep_substeps;
  std::sort(sweep.begin(), sweep.end());
  for (int nsub : sweep) {
    AdjointSweepRow row;
    row.substeps = nsub;
    if (nsub == stepper_opt.substeps) {
      for (int p = 0; p < subset; ++p) {
        row.max_residual = std::max(row.max_residual, report.residuals[p]);
      }
    } else {
      StepperOptions so = stepper_opt;
      so.substeps = nsub;
      FrozenTrajectory traj = record_base_trajectory(grid, stokes, so, basis,
                                                     seed, opt.traj_scale);
      for (int p = 0; p < subset; ++p) {
        DualityResult r = duality_check(grid, stokes, so, traj, basis, seed,
                                        static_cast<std::uint64_t>(p));
        row.max_residual = std::max(row.max_residual, r.residual);
      }
    }
    report.sweep.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < report.sweep.size(); ++i) {
    report.halving_ratios.push_back(report.sweep[i].max_residual /
                                    report.sweep[i + 1].max_residual);
  }

  bool order_ok = std::all_of(
      report.halving_ratios.begin(), report.halving_ratios.end(),
      [&](double r) { return std::isfinite(r) && r >= opt.order_lo; });
  double finest = report.sweep.empty() ? report.max_residual
                                       : report.sweep.back().max_residual;
  report.ok = order_ok && finest <= opt.residual_gate &&
              report.max_residual <= opt.residual_gate;
  return report;
}

DensityReport run_density(const Grid& grid, const StokesSolver& stokes,
                          const StepperOptions& stepper_opt,
                          const NoiseBasis& basis, std::uint64_t seed,
                          double traj_scale, int d) {
  FrozenTrajectory base = record_base_trajectory(grid, stokes, stepper_opt,
                                                 basis, seed, traj_scale);
  return density_diagnostic(grid, stokes, stepper_opt, base, basis, d);
}

// --- self-validation ---------------------------------------------------------

StokesValidationReport run_stokes_validation(const Grid& grid, double rayleigh,
                                             std::uint64_t seed, int nfields) {
  if (nfields < 1) throw ConfigError("validation: nfields must be positive");
  StokesSolver solver(grid, rayleigh);
  StokesOracle oracle(grid, rayleigh);
  Fft fft(grid);
  ScalarField theta(grid);
  RealArray phys(grid.n_phys());
  ComplexArray u1(grid.n_spec()), u2(grid.n_spec()), u3(grid.n_spec());
  ComplexArray v1(grid.n_spec()), v2(grid.n_spec()), v3(grid.n_spec());

  ComplexArray div(grid.n_spec());

  StokesValidationReport report;
  report.fields = nfields;
  const int nz = grid.nz();
  const std::size_t nmodes = grid.modes().size();
  std::vector<double> mode_dev(nmodes, 0.0), mode_ref(nmodes, 0.0),
      mode_div(nmodes, 0.0);
  const std::size_t plane = static_cast<std::size_t>(grid.n1()) * grid.n2();
  for (int f = 0; f < nfields; ++f) {
    DrawStream draws(seed, stream::kValidation, static_cast<std::uint64_t>(f),
                     0);
    for (std::size_t i = 0; i < grid.n_phys(); ++i) {
      phys[i] = draws.next_uniform_sym();
    }
    // Temperature deviations vanish at the walls.
    for (std::size_t i = 0; i < plane; ++i) phys[i] = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      phys[static_cast<std::size_t>(grid.n3()) * plane + i] = 0.0;
    }
    theta.from_physical(fft, phys.data());

    solver.apply_M(theta.spec(), u1.data(), u2.data(), u3.data());
    oracle.apply_M(theta.spec(), v1.data(), v2.data(), v3.data());
    divergence(grid, u1.data(), u2.data(), u3.data(), div.data());

    double num = 0.0, den = 0.0;
    const ComplexArray* mine[3] = {&u1, &u2, &u3};
    const ComplexArray* ref[3] = {&v1, &v2, &v3};
    for (std::size_t mi = 0; mi < nmodes; ++mi) {
      const Mode& mode = grid.modes()[mi];
      double dev2 = 0.0, ref2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        const std::complex<double>* a = mine[c]->data() + mode.offset;
        const std::complex<double>* b = ref[c]->data() + mode.offset;
        for (int j = 0; j < nz; ++j) {
          dev2 += std::norm(a[j] - b[j]);
          ref2 += std::norm(b[j]);
        }
      }
      mode_dev[mi] += mode.weight * dev2;
      mode_ref[mi] += mode.weight * ref2;
      num += mode.weight * dev2;
      den += mode.weight * ref2;
      const std::complex<double>* dv = div.data() + mode.offset;
      for (int j = 0; j < nz; ++j) {
        mode_div[mi] = std::max(mode_div[mi], std::abs(dv[j]));
      }
    }
    double rel = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    report.max_rel_error = std::max(report.max_rel_error, rel);
  }
  for (std::size_t mi = 0; mi < nmodes; ++mi) {
    const Mode& mode = grid.modes()[mi];
    StokesModeRow row;
    row.k1 = mode.k1;
    row.k2 = mode.k2;
    row.kappa2 = mode.kappa2;
    row.rel_deviation = mode_ref[mi] > 0.0
                            ? std::sqrt(mode_dev[mi] / mode_ref[mi])
                            : std::sqrt(mode_dev[mi]);
    row.divergence = mode_div[mi];
    report.max_divergence = std::max(report.max_divergence, row.divergence);
    report.modes.push_back(row);
  }
  return report;
}

std::string stokes_validation_csv(const StokesValidationReport& report) {
  std::string out = "# stokes-validate v1\nk1,k2,kappa2,rel_deviation,divergence\n";
  char line[160];
  for (const StokesModeRow& row : report.modes) {
    std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g\n", row.k1,
                  row.k2, row.kappa2, row.rel_deviation, row.divergence);
    out += line;
  }
  return out;
}

NoiseValidationReport run_noise_validation(const Grid& grid,
                                           const NoiseBasis& basis,
                                           std::uint64_t seed,
                                           std::int64_t moment_draws,
                                           std::int64_t ks_draws) {
  if (moment_draws < 2 || ks_draws < 2) {
    throw ConfigError("validation: draw counts must be at least 2");
  }
  NoiseValidationReport report;
  report.moment_draws = moment_draws;
  report.ks_draws = ks_draws;

  // Scalar law: mean 0, variance 1/7, fourth moment 1/21 for
  // rho(x) = (15/16)(1-x^2)^2, so Var(x^2) = 1/21 - 1/49 = 4/147.
  {
    DrawStream draws(seed, stream::kValidation, 0, 1);
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t i = 0; i < moment_draws; ++i) {
      double x = draws.next_bounded();
      sum += x;
      sumsq += x * x;
    }
    double n = static_cast<double>(moment_draws);
    report.mean = sum / n;
    report.variance = (sumsq - n * report.mean * report.mean) / (n - 1.0);
    report.mean_bound = 3.0 * std::sqrt((1.0 / 7.0) / n);
    report.variance_bound = 3.0 * std::sqrt((4.0 / 147.0) / n);
  }

  // Kolmogorov-Smirnov against the closed-form CDF.
  {
    DrawStream draws(seed, stream::kValidation, 1, 1);
    std::vector<double> xs(static_cast<std::size_t>(ks_draws));
    for (double& x : xs) x = draws.next_bounded();
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(ks_draws);
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double x = xs[i];
      double cdf =
          0.5 + (15.0 / 16.0) *
                    (x - (2.0 / 3.0) * x * x * x +
                     0.2 * x * x * x * x * x);
      d = std::max(d, cdf - static_cast<double>(i) / n);
      d = std::max(d, static_cast<double>(i + 1) / n - cdf);
    }
    report.ks = d;
  }

  // Exact support: every basis element is identically zero at nodes with
  // x3 >= c (the vertical profiles are cut off there, not just small).
  {
    ComplexArray tmp(grid.n_spec());
    int first_outside = static_cast<int>(
        std::ceil(basis.options().c * grid.n3() - 1.0e-12));
    for (int j = 0; j < basis.size(); ++j) {
      for (double t : {0.0, 0.37, 1.0}) {
        tmp.fill_zero();
        basis.add_basis_element(j, t, 1.0, tmp.data());
        for (const Mode& mode : grid.modes()) {
          for (int node = first_outside; node <= grid.n3(); ++node) {
            report.max_above_layer = std::max(
                report.max_above_layer, std::abs(tmp[mode.offset + node]));
          }
        }
      }
    }
  }

  // Orthonormality under the path energy product.
  report.gram_row_dev.assign(static_cast<std::size_t>(basis.size()), 0.0);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      double want = i == j ? 1.0 : 0.0;
      double dev = std::abs(basis.basis_e_product(i, j) - want);
      report.gram_row_dev[i] = std::max(report.gram_row_dev[i], dev);
      report.gram_row_dev[j] = std::max(report.gram_row_dev[j], dev);
      report.gram_max_dev = std::max(report.gram_max_dev, dev);
    }
  }

  report.ok = std::abs(report.mean) <= report.mean_bound &&
              std::abs(report.variance - 1.0 / 7.0) <= report.variance_bound &&
              report.ks <= 0.01 && report.max_above_layer == 0.0 &&
              report.gram_max_dev <= 1.0e-10;
  return report;
}

std::string noise_validation_csv(const NoiseValidationReport& report) {
  std::string out = "# noise-validate v1\nitem,value\n";
  char line[96];
  auto add = [&](const char* item, double value) {
    std::snprintf(line, sizeof(line), "%s,%.17g\n", item, value);
    out += line;
  };
  add("mean", report.mean);
  add("mean_bound", report.mean_bound);
  add("variance", report.variance);
  add("variance_bound", report.variance_bound);
  add("ks", report.ks);
  add("max_above_layer", report.max_above_layer);
  for (std::size_t i = 0; i < report.gram_row_dev.size(); ++i) {
    std::snprintf(line, sizeof(line), "gram_row_%zu,%.17g\n", i,
                  report.gram_row_dev[i]);
    out += line;
  }
  return out;
}

std::string adjoint_csv(const AdjointReport& report) {
  std::string out = "# adjoint-check v1\nsubsteps,max_residual\n";
  char line[96];
  for (const AdjointSweepRow& row : report.sweep) {
    std::snprintf(line, sizeof(line), "%d,%.17g\n", row.substeps,
                  row.max_residual);
    out += line;
  }
  out += "pair,residual\n";
  for (std::size_t p = 0; p < report.residuals.size(); ++p) {
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", p, report.residuals[p]);
    out += line;
  }
  return out;
}

std::string density_csv(const DensityReport& report) {
  std::string out = "# density v1\nindex,sigma\n";
  char line[64];
  for (std::size_t i = 0; i < report.singular_values.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", i,
                  report.singular_values[i]);
    out += line;
  }
  return out;
}

std::string mixing_csv(const MixingReport& report) {
  std::string out = "# mix v1\nstep,distance,coupling\n";
  char line[96];
  for (std::size_t k = 0; k < report.distance.size(); ++k) {
    double coupling =
        k < report.coupling.size() ? report.coupling[k] : 0.0;
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", k,
                  report.distance[k], coupling);
    out += line;
  }
  return out;
}

std::string dissipativity_csv(const DissipativityReport& report) {
  std::string out = "# dissipativity v1\nradius,unit,h1\n";
  char line[96];
  for (const DissipativityRun& run : report.runs) {
    for (std::size_t k = 0; k < run.h1.size(); ++k) {
      std::snprintf(line, sizeof(line), "%.17g,%zu,%.17g\n", run.radius, k,
                    run.h1[k]);
      out += line;
    }
  }
  return out;
}

}  // namespace benard
