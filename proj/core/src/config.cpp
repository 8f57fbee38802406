// config.cpp: run configuration, key=value parsing, canonical hashing.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "benard/errors.hpp"

namespace benard {

namespace {

enum class Kind { kInt, kDouble, kU64, kString };

struct FieldRef {
  const char* key;
  Kind kind;
  void* ptr;
  bool hashed;  // execution details are excluded from the canonical form
};

std::vector<FieldRef> fields(RunConfig& c) {
  // Keep sorted by key; canonical() relies on it.
  return {
      {"adjoint.pairs", Kind::kInt, &c.adjoint_pairs, true},
      {"adjoint.subset", Kind::kInt, &c.adjoint_subset, true},
      {"adjoint.traj_scale", Kind::kDouble, &c.adjoint_traj_scale, true},
      {"control.eps1", Kind::kDouble, &c.control_eps1, true},
      {"control.eps2", Kind::kDouble, &c.control_eps2, true},
      {"control.l", Kind::kInt, &c.control_l, true},
      {"control.max_periodic_units", Kind::kInt, &c.control_max_periodic_units,
       true},
      {"control.min_pass", Kind::kInt, &c.control_min_pass, true},
      {"control.periodic_tol", Kind::kDouble, &c.control_periodic_tol, true},
      {"control.ratio_gate", Kind::kDouble, &c.control_ratio_gate, true},
      {"control.sweep_gate", Kind::kDouble, &c.control_sweep_gate, true},
      {"control.trial_radius", Kind::kDouble, &c.control_trial_radius, true},
      {"control.trial_units", Kind::kInt, &c.control_trial_units, true},
      {"control.trials", Kind::kInt, &c.control_trials, true},
      {"density.d", Kind::kInt, &c.density_d, true},
      {"diss.amplitude_scale", Kind::kDouble, &c.diss_amplitude_scale, true},
      {"diss.max_units", Kind::kInt, &c.diss_max_units, true},
      {"diss.radii", Kind::kString, &c.diss_radii, true},
      {"diss.threshold", Kind::kDouble, &c.diss_threshold, true},
      {"grid.n1", Kind::kInt, &c.n1, true},
      {"grid.n2", Kind::kInt, &c.n2, true},
      {"grid.n3", Kind::kInt, &c.n3, true},
      {"mix.amplitude_scale", Kind::kDouble, &c.mix_amplitude_scale, true},
      {"mix.ball_radius", Kind::kDouble, &c.mix_ball_radius, true},
      {"mix.chains", Kind::kInt, &c.mix_chains, true},
      {"mix.dict_seed", Kind::kU64, &c.mix_dict_seed, true},
      {"mix.fit_hi", Kind::kInt, &c.mix_fit_hi, true},
      {"mix.fit_lo", Kind::kInt, &c.mix_fit_lo, true},
      {"mix.init", Kind::kString, &c.mix_init, true},
      {"mix.observables", Kind::kInt, &c.mix_observables, true},
      {"mix.substeps", Kind::kInt, &c.mix_substeps, true},
      {"mix.units", Kind::kInt, &c.mix_units, true},
      {"noise.a", Kind::kDouble, &c.noise_amplitude, true},
      {"noise.b0", Kind::kDouble, &c.noise_b0, true},
      {"noise.c", Kind::kDouble, &c.noise_c, true},
      {"noise.m", Kind::kInt, &c.noise_m, true},
      {"noise.s", Kind::kDouble, &c.noise_s, true},
      {"out.dir", Kind::kString, &c.out_dir, false},
      {"phys.rayleigh", Kind::kDouble, &c.rayleigh, true},
      {"phys.t_bottom", Kind::kDouble, &c.t_bottom, true},
      {"phys.t_top", Kind::kDouble, &c.t_top, true},
      {"sim.cfl_limit", Kind::kDouble, &c.cfl_limit, true},
      {"sim.seed", Kind::kU64, &c.seed, true},
      {"sim.substeps", Kind::kInt, &c.substeps, true},
      {"sim.units", Kind::kInt, &c.units, true},
      {"workers", Kind::kInt, &c.workers, false},
  };
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string format_value(const FieldRef& f) {
  char buf[64];
  switch (f.kind) {
    case Kind::kInt:
      std::snprintf(buf, sizeof(buf), "%d", *static_cast<int*>(f.ptr));
      return buf;
    case Kind::kDouble:
      std::snprintf(buf, sizeof(buf), "%.17g", *static_cast<double*>(f.ptr));
      return buf;
    case Kind::kU64:
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(
                        *static_cast<std::uint64_t*>(f.ptr)));
      return buf;
    case Kind::kString:
      return *static_cast<std::string*>(f.ptr);
  }
  return {};
}

void assign_value(const FieldRef& f, const std::string& value,
                  const std::string& key) {
  try {
    std::size_t used = 0;
    switch (f.kind) {
      case Kind::kInt: {
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        *static_cast<int*>(f.ptr) = v;
        return;
      }
      case Kind::kDouble: {
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        *static_cast<double*>(f.ptr) = v;
        return;
      }
      case Kind::kU64: {
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        *static_cast<std::uint64_t*>(f.ptr) = v;
        return;
      }
      case Kind::kString:
        *static_cast<std::string*>(f.ptr) = value;
        return;
    }
  } catch (const std::exception&) {
    throw ConfigError("config: bad value '" + value + "' for key '" + key +
                      "'");
  }
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const FieldRef& f : fields(*this)) {
    if (key == f.key) {
      assign_value(f, value, key);
      return;
    }
  }
  throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::load(const std::string& path,
                          const std::vector<std::string>& overrides) {
  RunConfig c;
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " of '" + path + "' is not key=value");
    }
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const std::string& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: override '" + ov + "' is not key=value");
    }
    c.set(trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  c.validate();
  return c;
}

RunConfig RunConfig::from_overrides(const std::vector<std::string>& overrides) {
  RunConfig c;
  for (const std::string& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: override '" + ov + "' is not key=value");
    }
    c.set(trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (n1 < 6 || n2 < 6 || n1 % 2 || n2 % 2) {
    throw ConfigError("config: horizontal sizes must be even and at least 6");
  }
  if (n3 < 4) throw ConfigError("config: need at least 4 vertical cells");
  if (substeps < 2 || mix_substeps < 2) {
    throw ConfigError("config: substeps must be at least 2");
  }
  if (units < 1 || mix_units < 1) {
    throw ConfigError("config: unit counts must be positive");
  }
  if (cfl_limit <= 0.0) throw ConfigError("config: cfl limit must be positive");
  if (noise_m < 1) throw ConfigError("config: noise.m must be positive");
  if (noise_c <= 0.0 || noise_c >= 1.0) {
    throw ConfigError("config: noise.c must lie in (0,1)");
  }
  // The boundary layer edge must land on a grid node, or the "vanishes for
  // x3 >= c" support statement would hold only approximately.
  double layer_cells = noise_c * n3;
  if (std::abs(layer_cells - std::round(layer_cells)) > 1.0e-9) {
    throw ConfigError("config: noise.c times grid.n3 must be an integer");
  }
  if (noise_amplitude < 0.0) {
    throw ConfigError("config: noise.a must be nonnegative");
  }
  if (mix_init != "conduction" && mix_init != "random" &&
      mix_init.rfind("checkpoint:", 0) != 0) {
    throw ConfigError(
        "config: mix.init must be conduction, random, or checkpoint:<path>");
  }
  if (!(control_eps1 > 0.0 && control_eps1 < control_eps2 &&
        control_eps2 < noise_c)) {
    throw ConfigError("config: control ramp must satisfy 0 < eps1 < eps2 < c");
  }
  if (mix_fit_lo < 0 || mix_fit_hi <= mix_fit_lo || mix_fit_hi > mix_units) {
    throw ConfigError("config: mixing fit window is inconsistent");
  }
  if (mix_chains < 1 || mix_observables < 1) {
    throw ConfigError("config: mixing sizes must be positive");
  }
  if (adjoint_pairs < 1 || adjoint_subset < 1) {
    throw ConfigError("config: duality pair counts must be positive");
  }
  if (density_d < 1) throw ConfigError("config: density.d must be positive");
  if (workers < 1 || workers > 64) {
    throw ConfigError("config: workers must lie in [1, 64]");
  }
  if (diss_threshold <= 0.0 || diss_max_units < 1 ||
      diss_amplitude_scale < 0.0) {
    throw ConfigError("config: dissipativity gates must be positive");
  }
}

std::vector<std::string> RunConfig::warnings() const {
  std::vector<std::string> out;
  if (t_bottom < t_top) {
    out.push_back(
        "phys: t_bottom < t_top gives a stably stratified profile; the "
        "solver accepts it, but the convective regime assumes heating from "
        "below");
  }
  return out;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  RunConfig& self = const_cast<RunConfig&>(*this);
  for (const FieldRef& f : fields(self)) {
    if (!f.hashed) continue;
    out << f.key << '=' << format_value(f) << '\n';
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> RunConfig::items() const {
  std::vector<std::pair<std::string, std::string>> out;
  RunConfig& self = const_cast<RunConfig&>(*this);
  for (const FieldRef& f : fields(self)) {
    if (!f.hashed) continue;
    out.emplace_back(f.key, format_value(f));
  }
  return out;
}

std::string RunConfig::hash() const {
  // FNV-1a, 64-bit.
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace benard
