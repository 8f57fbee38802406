// noise.hpp: the bounded forcing class -- smooth space-time elements confined
// to the bottom boundary layer, orthonormalized in the path energy product,
// with per-unit coefficients drawn from a bounded density.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "benard/grid.hpp"
#include "benard/rng.hpp"

namespace benard {

struct NoiseOptions {
  int m = 64;           // number of basis elements
  double c = 0.25;      // boundary-layer depth (support of the forcing)
  double b0 = 1.0;      // coefficient ladder b_j = b0 / j^s
  double s = 1.0;
  double amplitude = 0.02;  // overall forcing amplitude a
};

// Orthonormal forcing basis over one unit-time block.
//
// Raw elements are products tau_p(t) e_q(x_h) beta_r(x3) with tau_p the first
// two orthonormal Legendre polynomials on [0,1], e_q in {cos(q.x), sin(q.x)}
// (constant for q = 0), and beta_r = sin^3(pi r x3 / c) cut off at x3 = c, so
// every element is C^2, vanishes identically above the boundary layer, and
// satisfies the wall conditions. Elements are enumerated by horizontal shell
// |q|^2 in the order [1, 2, 4, mean, 5, ...]: the three lowest mean-free
// shells lead because buoyancy couples only to mean-free fields, and the
// horizontal-mean pair follows them. Within a shell: reps sorted by (q1, q2),
// then cos before sin, then r, then p.
//
// The basis is orthonormalized against the path energy product
//   E(f, g) = int_0^1 [ <Af, Ag> + <f, g> + <df/dt, dg/dt> ] dt,
// with A the discrete Laplacian (spectral horizontally, second differences
// vertically) and the time integrals done analytically -- so the basis is
// independent of any time-step choice. The Gram matrix is Cholesky-factored;
// a rank failure reports the offending element index.
class NoiseBasis {
 public:
  NoiseBasis(const Grid& g, const NoiseOptions& opt);

  const Grid& grid() const { return *grid_; }
  const NoiseOptions& options() const { return opt_; }
  int size() const { return opt_.m; }
  double b(int j) const;  // coefficient ladder, j in [0, m)

  // Adds coeff * phi_j(t_local) into a spectral array (retained modes only,
  // nothing above the boundary layer). t_local in [0, 1].
  void add_basis_element(int j, double t_local, double coeff,
                         std::complex<double>* out) const;

  // Collapses basis-space coefficients into raw-element weights (one matrix
  // multiply); add_raw_eval then evaluates the sum at any time cheaply.
  std::vector<double> collapse(const std::vector<double>& coeffs) const;
  void add_raw_eval(const std::vector<double>& raw_weights, double t_local,
                    std::complex<double>* out) const;

  // Exact E-product of two basis elements (identity matrix by construction;
  // exposed so tests can verify the orthonormalization independently).
  double basis_e_product(int i, int j) const;

  // --- raw-element access for the control projection ---
  // Normalized Legendre time factors tau_0 = 1, tau_1 = sqrt(3)(2t - 1).
  static double tau(int p, double t_local);
  // Time-polynomial degree of raw element i (0 or 1).
  int raw_p(int i) const { return raw_[i].p; }
  // Storage indices of raw element i's horizontal mode.
  void raw_mode(int i, int& i1, int& i2) const;
  // Orthonormalization weights: phi_j = sum_i basis_weight(i, j) * raw_i.
  double basis_weight(int raw_i, int basis_j) const {
    return xmat_[static_cast<std::size_t>(raw_i) * opt_.m + basis_j];
  }
  // <field, R_i>_{L2} against the static spatial part of raw element i.
  double raw_l2_pairing(int i, const std::complex<double>* field) const;
  // <field, R_i> + <A field, A R_i> with A the discrete Laplacian (the
  // spatial piece of the E-product).
  double raw_e_spatial_pairing(int i, const std::complex<double>* field) const;
  // Spatial L2 and Laplacian-Laplacian products of two raw elements.
  void raw_spatial_products(int i, int k, double& l2, double& lap) const;

 private:
  struct RawElement {
    int q1 = 0, q2 = 0;  // canonical rep; (0,0) is the horizontal mean
    bool is_sin = false;
    int r = 1;  // vertical profile index (1 or 2)
    int p = 0;  // time polynomial degree (0 or 1)
  };

  void build_elements();
  void build_gram();

  const Grid* grid_;
  NoiseOptions opt_;
  std::vector<RawElement> raw_;
  std::vector<double> beta_;   // 2 * nz: sampled beta_r columns
  std::vector<double> dbeta_;  // 2 * nz: second differences L beta_r
  std::vector<double> gram_;   // m x m raw-element E-Gram (row-major)
  std::vector<double> xmat_;   // m x m upper-tri map raw -> orthonormal
  int support_ = 0;            // nodes with x3 < c
};

// One unit block's realized forcing: eta(t) = a sum_j b_j xi_j phi_j(t - k),
// with xi_j drawn iid from the bounded density via the counter-based stream
// (seed, noise, chain, unit). Use as the stepper's Forcing callback.
class NoiseSample {
 public:
  NoiseSample(const NoiseBasis& basis, std::uint64_t seed, std::uint64_t chain,
              std::uint64_t unit, double amplitude_scale = 1.0);

  const std::vector<double>& xi() const { return xi_; }
  // Basis-space coefficients a * b_j * xi_j.
  const std::vector<double>& coeffs() const { return coeffs_; }

  // Adds eta(t_local) for t_local in [0, 1] of this block.
  void add_eval(double t_local, std::complex<double>* out) const;

 private:
  const NoiseBasis* basis_;
  std::vector<double> xi_;
  std::vector<double> coeffs_;
  std::vector<double> raw_weights_;
};

}  // namespace benard
