// benard_mix_main.cpp: command-line driver dispatching the experiment suite
// (simulate, mix, control, adjoint-check, stokes-validate, noise-validate,
// dissipativity); writes JSON reports plus CSV series and exits 0 on pass,
// 1 on gate failure, 2 on configuration errors.
// Part of benard-mix (MIT license; see LICENSE).
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "benard/checkpoint.hpp"
#include "benard/config.hpp"
#include "benard/control.hpp"
#include "benard/errors.hpp"
#include "benard/experiments.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/markov.hpp"
#include "benard/noise.hpp"
#include "benard/report.hpp"
#include "benard/stokes.hpp"

namespace {

using benard::ConfigError;
using benard::Grid;
using benard::Json;
using benard::NoiseBasis;
using benard::RunConfig;
using benard::StokesSolver;

// Options shared by every subcommand; values land in the RunConfig.
struct CommonArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path,
                  "Key=value configuration file");
  cmd->add_option("--set", args.sets,
                  "Override one configuration key (key=value, repeatable)");
  cmd->add_option("--out-dir", args.out_dir, "Directory for reports and CSVs");
  cmd->add_option("--seed", args.seed, "Random seed")
      ->each([&](const std::string&) { args.seed_given = true; });
  cmd->add_option("--workers", args.workers, "Worker thread count");
}

RunConfig load_config(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty()
                      ? RunConfig::from_overrides(args.sets)
                      : RunConfig::load(args.config_path, args.sets);
  if (args.seed_given) cfg.seed = args.seed;
  if (args.workers > 0) cfg.workers = args.workers;
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (const char* cap = std::getenv("BENARD_MIX_THREADS")) {
    int n = std::atoi(cap);
    if (n > 0) cfg.workers = std::min(cfg.workers, n);
  }
  cfg.validate();
  for (const std::string& w : cfg.warnings()) {
    std::cerr << "warning: " << w << "\n";
  }
  return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

// Emits the JSON report (config embedded) and any CSV series, prints the
// summary line, and maps the gate to the exit code.
int finish(const RunConfig& cfg, const std::string& kind, Json body, bool ok,
           const std::vector<std::pair<std::string, std::string>>& csvs,
           std::chrono::steady_clock::time_point started) {
  std::filesystem::path dir(cfg.out_dir);
  body["kind"] = kind;
  body["config"] = benard::config_json(cfg);
  Json csv_paths = Json::array();
  for (const auto& [name, text] : csvs) {
    write_text(dir / name, text);
    csv_paths.push_back(name);
  }
  body["csv"] = csv_paths;
  body["ok"] = ok;
  std::filesystem::path report_path = dir / (kind + "_report.json");
  benard::write_report(report_path.string(), body);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  std::cout << kind << ": " << (ok ? "PASS" : "FAIL") << " (" << elapsed
            << " s), report " << report_path.string() << "\n";
  return ok ? 0 : 1;
}

Json fit_json(double slope, double intercept, double r2) {
  return Json{{"slope", slope}, {"intercept", intercept}, {"r2", r2}};
}

int cmd_simulate(const RunConfig& cfg, int checkpoint_every) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  StokesSolver stokes(grid, cfg.rayleigh);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::SimulateOptions opt;
  opt.units = cfg.units;
  opt.checkpoint_every = checkpoint_every;
  opt.out_dir = cfg.out_dir;
  benard::SimulateReport rep = benard::run_simulate(
      grid, stokes, benard::make_stepper_options(cfg), basis, cfg.seed, opt);
  Json body;
  body["units"] = opt.units;
  body["max_cfl"] = rep.max_cfl;
  body["final_l2"] = rep.energy.empty() ? 0.0 : rep.energy.back().l2;
  body["final_h1"] = rep.energy.empty() ? 0.0 : rep.energy.back().h1;
  body["checkpoints"] = rep.checkpoints;
  return finish(cfg, "simulate", std::move(body), true,
                {{"energy.csv", benard::energy_csv(rep)}}, t0);
}

int cmd_mix(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::MixingOptions opt = benard::make_mixing_options(cfg);
  benard::ScalarField init_field(grid);
  if (cfg.mix_init == "conduction") {
    opt.init_b = benard::MixInit::kConduction;
  } else if (cfg.mix_init.rfind("checkpoint:", 0) == 0) {
    std::string path = cfg.mix_init.substr(std::string("checkpoint:").size());
    benard::load_checkpoint(path, grid,
                            {{"temperature_deviation", init_field.spec()}});
    opt.init_b = benard::MixInit::kField;
    opt.init_field = init_field.spec();
  }
  benard::MixingReport rep = benard::run_mixing(
      grid, benard::make_mix_stepper_options(cfg), basis, cfg.seed, opt);
  bool ok = rep.gamma > 0.0 && rep.r2 >= 0.9 && rep.coupling_gamma > 0.0;
  Json body;
  body["gamma"] = rep.gamma;
  body["prefactor"] = std::exp(rep.intercept);
  body["r2"] = rep.r2;
  body["coupling_gamma"] = rep.coupling_gamma;
  body["coupling_r2"] = rep.coupling_r2;
  body["fit_points"] = rep.fit_points;
  body["max_cfl"] = rep.max_cfl;
  return finish(cfg, "mix", std::move(body), ok,
                {{"mixing.csv", benard::mixing_csv(rep)}}, t0);
}

int cmd_control(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  StokesSolver stokes(grid, cfg.rayleigh);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::BoundaryController controller(grid, stokes,
                                        benard::make_stepper_options(cfg),
                                        basis,
                                        benard::make_control_options(cfg));
  benard::ControlReport rep = controller.run(cfg.seed);
  Json body;
  body["l"] = rep.l;
  body["periodic_converged"] = rep.periodic_converged;
  body["periodic_units"] = rep.periodic_units;
  body["periodic_residual"] = rep.periodic_residual;
  body["contraction_ratio"] = rep.contraction_ratio;
  body["replay_error"] = rep.replay_error;
  body["trial_ratios"] = rep.trial_ratios;
  body["trials_passed"] = rep.trials_passed;
  body["best_ratio"] =
      rep.trial_ratios.empty()
          ? 0.0
          : *std::min_element(rep.trial_ratios.begin(),
                              rep.trial_ratios.end());
  body["a_min"] = rep.a_min;
  body["max_coeff_increment"] = rep.max_coeff_increment;
  body["sweep_l"] = rep.sweep_l;
  body["sweep_ratio"] = rep.sweep_ratio;
  return finish(cfg, "control", std::move(body), rep.ok, {}, t0);
}

int cmd_adjoint(const RunConfig& cfg, const std::string& dt_sweep) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  StokesSolver stokes(grid, cfg.rayleigh);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::StepperOptions stepper_opt = benard::make_stepper_options(cfg);
  benard::AdjointOptions opt;
  opt.pairs = cfg.adjoint_pairs;
  opt.subset = cfg.adjoint_subset;
  opt.traj_scale = cfg.adjoint_traj_scale;
  if (!dt_sweep.empty()) {
    opt.sweep_substeps.clear();
    for (double v : benard::parse_number_list(dt_sweep)) {
      opt.sweep_substeps.push_back(static_cast<int>(v));
    }
  }
  benard::AdjointReport rep = benard::run_adjoint_check(
      grid, stokes, stepper_opt, basis, cfg.seed, opt);
  benard::DensityReport density = benard::run_density(
      grid, stokes, stepper_opt, basis, cfg.seed, opt.traj_scale,
      cfg.density_d);
  bool density_ok =
      static_cast<int>(density.singular_values.size()) == cfg.density_d &&
      density.singular_values.back() > 1.0e-10;
  Json body;
  body["max_residual"] = rep.max_residual;
  body["residuals"] = rep.residuals;
  body["halving_ratios"] = rep.halving_ratios;
  Json sweep = Json::array();
  for (const benard::AdjointSweepRow& row : rep.sweep) {
    sweep.push_back(
        Json{{"substeps", row.substeps}, {"max_residual", row.max_residual}});
  }
  body["sweep"] = sweep;
  body["duality_ok"] = rep.ok;
  body["singular_values"] = density.singular_values;
  body["sigma_min"] = density.singular_values.empty()
                          ? 0.0
                          : density.singular_values.back();
  body["density_ok"] = density_ok;
  return finish(cfg, "adjoint-check", std::move(body), rep.ok && density_ok,
                {{"adjoint.csv", benard::adjoint_csv(rep)},
                 {"density.csv", benard::density_csv(density)}},
                t0);
}

int cmd_dissipativity(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  StokesSolver stokes(grid, cfg.rayleigh);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::DissipativityOptions opt;
  opt.radii = benard::parse_number_list(cfg.diss_radii);
  opt.threshold = cfg.diss_threshold;
  opt.max_units = cfg.diss_max_units;
  opt.amplitude_scale = cfg.diss_amplitude_scale;
  benard::DissipativityReport rep = benard::run_dissipativity(
      grid, stokes, benard::make_stepper_options(cfg), basis, cfg.seed, opt);
  Json body;
  Json runs = Json::array();
  for (const benard::DissipativityRun& run : rep.runs) {
    runs.push_back(Json{{"radius", run.radius},
                        {"entered", run.entered},
                        {"entry_unit", run.entry_unit}});
  }
  body["runs"] = runs;
  body["all_entered"] = rep.all_entered;
  body["non_decreasing"] = rep.non_decreasing;
  body["sublinear"] = rep.sublinear;
  body["fit"] = fit_json(rep.slope, rep.intercept, rep.r2);
  body["max_cfl"] = rep.max_cfl;
  return finish(cfg, "dissipativity", std::move(body), rep.ok,
                {{"entry_times.csv", benard::dissipativity_csv(rep)}}, t0);
}

int cmd_stokes_validate(const RunConfig& cfg, int nfields) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  benard::StokesValidationReport rep =
      benard::run_stokes_validation(grid, cfg.rayleigh, cfg.seed, nfields);
  bool ok = rep.max_rel_error <= 1.0e-9;
  Json body;
  body["fields"] = rep.fields;
  body["max_rel_error"] = rep.max_rel_error;
  body["max_divergence"] = rep.max_divergence;
  return finish(cfg, "stokes-validate", std::move(body), ok,
                {{"stokes_modes.csv", benard::stokes_validation_csv(rep)}},
                t0);
}

int cmd_noise_validate(const RunConfig& cfg, std::int64_t moment_draws,
                       std::int64_t ks_draws) {
  auto t0 = std::chrono::steady_clock::now();
  Grid grid(cfg.n1, cfg.n2, cfg.n3);
  NoiseBasis basis(grid, benard::make_noise_options(cfg));
  benard::NoiseValidationReport rep = benard::run_noise_validation(
      grid, basis, cfg.seed, moment_draws, ks_draws);
  Json body;
  body["moment_draws"] = rep.moment_draws;
  body["mean"] = rep.mean;
  body["mean_bound"] = rep.mean_bound;
  body["variance"] = rep.variance;
  body["variance_bound"] = rep.variance_bound;
  body["ks_draws"] = rep.ks_draws;
  body["ks"] = rep.ks;
  body["max_above_layer"] = rep.max_above_layer;
  body["gram_max_dev"] = rep.gram_max_dev;
  return finish(cfg, "noise-validate", std::move(body), rep.ok,
                {{"noise_law.csv", benard::noise_validation_csv(rep)}}, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for randomly forced boundary-layer "
               "convection at infinite Prandtl number"};
  app.require_subcommand(1);

  CommonArgs args;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Integrate the forced flow and log energy norms");
  add_common(simulate, args);
  int sim_steps = -1;
  int checkpoint_every = 0;
  simulate->add_option("--steps", sim_steps, "Unit-time steps to run");
  simulate->add_option("--checkpoint-every", checkpoint_every,
                       "Units between checkpoint files (0 disables)");

  CLI::App* mix = app.add_subcommand(
      "mix", "Two-ensemble mixing experiment with common random numbers");
  add_common(mix, args);
  int mix_chains = 0;
  int mix_steps = 0;
  std::string mix_init;
  mix->add_option("--chains", mix_chains, "Chains per ensemble");
  mix->add_option("--steps", mix_steps, "Unit-time steps per chain");
  mix->add_option("--init", mix_init,
                  "Second ensemble start: conduction|random|checkpoint:path");

  CLI::App* control = app.add_subcommand(
      "control", "Synthesize the layer-supported control and test trials");
  add_common(control, args);
  int control_n = 0;
  std::string control_l;
  double eps1 = 0.0, eps2 = 0.0;
  int control_trials = 0;
  control->add_option("--n", control_n, "Units per trial");
  control->add_option("--l", control_l, "Projection rank (auto or integer)");
  control->add_option("--eps1", eps1, "Ramp start height");
  control->add_option("--eps2", eps2, "Ramp end height");
  control->add_option("--trials", control_trials, "Random trial count");

  CLI::App* adjoint = app.add_subcommand(
      "adjoint-check", "Duality residuals plus the reachability spectrum");
  add_common(adjoint, args);
  std::string dt_sweep;
  int controls_m = 0;
  int target_dim = 0;
  adjoint->add_option("--dt-sweep", dt_sweep,
                      "Comma-separated substep counts for the sweep");
  adjoint->add_option("--controls", controls_m, "Forcing basis size");
  adjoint->add_option("--target-dim", target_dim,
                      "Low-mode target dimension for the spectrum");

  CLI::App* diss = app.add_subcommand(
      "dissipativity", "Ball entry times for scaled initial data");
  add_common(diss, args);
  std::string radii;
  diss->add_option("--radii", radii, "Comma-separated initial H1 norms");

  CLI::App* stokes_val = app.add_subcommand(
      "stokes-validate", "Velocity solver vs the dense reference");
  add_common(stokes_val, args);
  int nfields = 50;
  stokes_val->add_option("--fields", nfields, "Random fields to compare");

  CLI::App* noise_val = app.add_subcommand(
      "noise-validate", "Forcing law moments, KS, support, orthonormality");
  add_common(noise_val, args);
  std::int64_t moment_draws = 1000000;
  std::int64_t ks_draws = 100000;
  noise_val->add_option("--moment-draws", moment_draws,
                        "Draws for the moment checks");
  noise_val->add_option("--ks-draws", ks_draws,
                        "Draws for the KS statistic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage problems (unknown subcommand, bad flags) are config errors.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(args);
    if (simulate->parsed()) {
      if (sim_steps >= 0) cfg.units = sim_steps;
      if (sim_steps != 0) cfg.validate();
      return cmd_simulate(cfg, checkpoint_every);
    }
    if (mix->parsed()) {
      if (mix_chains > 0) cfg.mix_chains = mix_chains;
      if (mix_steps > 0) cfg.mix_units = mix_steps;
      if (!mix_init.empty()) cfg.mix_init = mix_init;
      cfg.validate();
      return cmd_mix(cfg);
    }
    if (control->parsed()) {
      if (control_n > 0) cfg.control_trial_units = control_n;
      if (!control_l.empty() && control_l != "auto") {
        cfg.control_l = std::stoi(control_l);
      }
      if (eps1 > 0.0) cfg.control_eps1 = eps1;
      if (eps2 > 0.0) cfg.control_eps2 = eps2;
      if (control_trials > 0) cfg.control_trials = control_trials;
      cfg.validate();
      return cmd_control(cfg);
    }
    if (adjoint->parsed()) {
      if (controls_m > 0) cfg.noise_m = controls_m;
      if (target_dim > 0) cfg.density_d = target_dim;
      cfg.validate();
      return cmd_adjoint(cfg, dt_sweep);
    }
    if (diss->parsed()) {
      if (!radii.empty()) cfg.diss_radii = radii;
      cfg.validate();
      return cmd_dissipativity(cfg);
    }
    if (stokes_val->parsed()) return cmd_stokes_validate(cfg, nfields);
    if (noise_val->parsed()) {
      return cmd_noise_validate(cfg, moment_draws, ks_draws);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
