// noise.cpp: forcing basis construction, orthonormalization, evaluation.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/noise.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace benard {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}  // namespace

double NoiseBasis::tau(int p, double t) {
  return p == 0 ? 1.0 : kSqrt3 * (2.0 * t - 1.0);
}

void NoiseBasis::raw_mode(int i, int& i1, int& i2) const {
  const RawElement& e = raw_[i];
  i1 = (e.q1 + grid_->n1()) % grid_->n1();
  i2 = e.q2;
}

NoiseBasis::NoiseBasis(const Grid& g, const NoiseOptions& opt)
    : grid_(&g), opt_(opt) {
  if (opt.m < 1) throw ConfigError("forcing: basis size must be positive");
  if (opt.c <= 0.0 || opt.c >= 1.0) {
    throw ConfigError("forcing: boundary-layer depth must lie in (0,1)");
  }
  build_elements();
  build_gram();
}

double NoiseBasis::b(int j) const {
  return opt_.b0 / std::pow(static_cast<double>(j + 1), opt_.s);
}

void NoiseBasis::build_elements() {
  const Grid& g = *grid_;

  // Canonical horizontal representatives (one per +/-q pair), grouped by
  // shell |q|^2 and sorted within a shell by (q1, q2).
  std::map<int, std::vector<std::pair<int, int>>> shells;
  for (int q2 = 0; q2 <= g.kmax2(); ++q2) {
    for (int q1 = -g.kmax1(); q1 <= g.kmax1(); ++q1) {
      if (q2 == 0 && q1 <= 0) continue;
      shells[q1 * q1 + q2 * q2].emplace_back(q1, q2);
    }
  }
  for (auto& [s2, reps] : shells) std::sort(reps.begin(), reps.end());

  // Shell order: three lowest mean-free shells, the horizontal mean, then the
  // remaining shells ascending. Buoyancy couples only to mean-free fields, so
  // leading with them keeps the low indices (largest ladder weights b_j) on
  // the directions that drive the flow.
  std::vector<int> order;
  for (const auto& [s2, reps] : shells) order.push_back(s2);
  std::vector<int> sequence;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sequence.push_back(order[i]);
    if (i == 2) sequence.push_back(0);  // the mean pseudo-shell
  }
  if (order.size() <= 2) sequence.push_back(0);

  raw_.clear();
  for (int s2 : sequence) {
    if (static_cast<int>(raw_.size()) >= opt_.m) break;
    if (s2 == 0) {
      for (int r = 1; r <= 2; ++r) {
        for (int p = 0; p <= 1; ++p) {
          raw_.push_back(RawElement{0, 0, false, r, p});
        }
      }
      continue;
    }
    for (const auto& [q1, q2] : shells[s2]) {
      const int i1 = (q1 + g.n1()) % g.n1();
      if (!g.is_active(i1, q2)) {
        throw ConfigError("forcing: basis mode outside the retained band");
      }
      for (int trig = 0; trig < 2; ++trig) {
        for (int r = 1; r <= 2; ++r) {
          for (int p = 0; p <= 1; ++p) {
            raw_.push_back(RawElement{q1, q2, trig == 1, r, p});
          }
        }
      }
    }
  }
  if (static_cast<int>(raw_.size()) < opt_.m) {
    throw ConfigError("forcing: grid too small for " +
                      std::to_string(opt_.m) + " basis elements");
  }
  raw_.resize(opt_.m);

  // Vertical profiles beta_r = sin^3(pi r x3 / c) below x3 = c, exactly zero
  // at and above it, and their second differences.
  const int nz = g.nz();
  beta_.assign(2 * nz, 0.0);
  dbeta_.assign(2 * nz, 0.0);
  support_ = 0;
  for (int r = 1; r <= 2; ++r) {
    double* col = beta_.data() + (r - 1) * nz;
    for (int j = 0; j < nz; ++j) {
      const double x3 = j * g.h();
      if (x3 < opt_.c) {
        const double s = std::sin(Grid::kPi * r * x3 / opt_.c);
        col[j] = s * s * s;
        if (col[j] != 0.0) support_ = std::max(support_, j + 1);
      }
    }
    double* dcol = dbeta_.data() + (r - 1) * nz;
    const double invh2 = static_cast<double>(g.n3()) * g.n3();
    for (int j = 1; j < nz - 1; ++j) {
      dcol[j] = (col[j - 1] - 2.0 * col[j] + col[j + 1]) * invh2;
    }
  }
}

void NoiseBasis::build_gram() {
  const Grid& g = *grid_;
  const int m = opt_.m;
  const int nz = g.nz();
  gram_.assign(static_cast<std::size_t>(m) * m, 0.0);

  // E(f, g) with the time integrals exact: same-p pairs pick up the spatial
  // H-product; the time-derivative term adds 12 * L2 for p = p' = 1.
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < m; ++k) {
      const RawElement& a = raw_[i];
      const RawElement& b = raw_[k];
      if (a.q1 != b.q1 || a.q2 != b.q2 || a.is_sin != b.is_sin) continue;
      const double q2 = static_cast<double>(a.q1) * a.q1 +
                        static_cast<double>(a.q2) * a.q2;
      const double cfac =
          (a.q1 == 0 && a.q2 == 0) ? Grid::kArea : 0.5 * Grid::kArea;
      const double* ba = beta_.data() + (a.r - 1) * nz;
      const double* bb = beta_.data() + (b.r - 1) * nz;
      const double* da = dbeta_.data() + (a.r - 1) * nz;
      const double* db = dbeta_.data() + (b.r - 1) * nz;
      double s0 = 0.0, s2 = 0.0;
      for (int j = 0; j < nz; ++j) {
        const double wt = g.wt(j);
        s0 += wt * ba[j] * bb[j];
        const double la = da[j] - q2 * ba[j];
        const double lb = db[j] - q2 * bb[j];
        s2 += wt * la * lb;
      }
      s0 *= cfac * g.h();
      s2 *= cfac * g.h();
      double e = 0.0;
      if (a.p == b.p) e += s0 + s2;
      if (a.p == 1 && b.p == 1) e += 12.0 * s0;
      gram_[static_cast<std::size_t>(i) * m + k] = e;
      gram_[static_cast<std::size_t>(k) * m + i] = e;
    }
  }

  // Cholesky G = L L^T; the orthonormal basis is phi = raw * (L^T)^{-1}.
  std::vector<double> chol = gram_;
  const int info =
      LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', m, chol.data(), m);
  if (info != 0) {
    throw SolverError("forcing: basis Gram is rank-deficient at element " +
                      std::to_string(info - 1));
  }
  xmat_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int j = 0; j < m; ++j) {
    // Solve L^T x = e_j; x is the j-th column, upper-triangular.
    xmat_[static_cast<std::size_t>(j) * m + j] =
        1.0 / chol[static_cast<std::size_t>(j) * m + j];
    for (int i = j - 1; i >= 0; --i) {
      double s = 0.0;
      for (int k = i + 1; k <= j; ++k) {
        s += chol[static_cast<std::size_t>(k) * m + i] *
             xmat_[static_cast<std::size_t>(k) * m + j];
      }
      xmat_[static_cast<std::size_t>(i) * m + j] =
          -s / chol[static_cast<std::size_t>(i) * m + i];
    }
  }
}

double NoiseBasis::basis_e_product(int i, int j) const {
  const int m = opt_.m;
  double acc = 0.0;
  for (int a = 0; a <= i; ++a) {
    const double xa = xmat_[static_cast<std::size_t>(a) * m + i];
    if (xa == 0.0) continue;
    for (int b = 0; b <= j; ++b) {
      acc += xa * gram_[static_cast<std::size_t>(a) * m + b] *
             xmat_[static_cast<std::size_t>(b) * m + j];
    }
  }
  return acc;
}

std::vector<double> NoiseBasis::collapse(
    const std::vector<double>& coeffs) const {
  const int m = opt_.m;
  std::vector<double> w(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int j = i; j < m; ++j) {
      acc += xmat_[static_cast<std::size_t>(i) * m + j] * coeffs[j];
    }
    w[i] = acc;
  }
  return w;
}

void NoiseBasis::add_raw_eval(const std::vector<double>& raw_weights,
                              double t_local,
                              std::complex<double>* out) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  for (int i = 0; i < opt_.m; ++i) {
    const double wi = raw_weights[i];
    if (wi == 0.0) continue;
    const RawElement& e = raw_[i];
    const double amp = wi * tau(e.p, t_local);
    const double* beta = beta_.data() + (e.r - 1) * nz;
    if (e.q1 == 0 && e.q2 == 0) {
      std::complex<double>* col = out + g.spec_index(0, 0, 0);
      for (int j = 1; j < support_; ++j) col[j] += amp * beta[j];
      continue;
    }
    const int i1 = (e.q1 + g.n1()) % g.n1();
    const std::complex<double> coeff =
        e.is_sin ? std::complex<double>(0.0, -0.5 * amp)
                 : std::complex<double>(0.5 * amp, 0.0);
    std::complex<double>* col = out + g.spec_index(i1, e.q2, 0);
    for (int j = 1; j < support_; ++j) col[j] += coeff * beta[j];
    if (e.q2 == 0) {
      // Keep the k2 = 0 line conjugate-symmetric.
      std::complex<double>* mir = out + g.spec_index(g.mirror_i1(i1), 0, 0);
      const std::complex<double> cc = std::conj(coeff);
      for (int j = 1; j < support_; ++j) mir[j] += cc * beta[j];
    }
  }
}

namespace {

// Stored-mode coefficient and mode multiplicity for a raw element's spatial
// part: cos -> 1/2, sin -> -i/2 at the canonical stored mode (multiplicity 2,
// counting either the conjugate column or the mirrored k2 = 0 partner), and
// the mean element -> coefficient 1 at mode (0,0) with multiplicity 1.
void raw_mode_shape(const Grid& g, int q1, int q2, bool is_sin, int& i1,
                    int& i2, std::complex<double>& coeff, double& mult) {
  if (q1 == 0 && q2 == 0) {
    i1 = 0;
    i2 = 0;
    coeff = 1.0;
    mult = 1.0;
    return;
  }
  i1 = (q1 + g.n1()) % g.n1();
  i2 = q2;
  coeff = is_sin ? std::complex<double>(0.0, -0.5)
                 : std::complex<double>(0.5, 0.0);
  mult = 2.0;
}

}  // namespace

double NoiseBasis::raw_l2_pairing(int i,
                                  const std::complex<double>* field) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  const RawElement& e = raw_[i];
  int i1 = 0, i2 = 0;
  std::complex<double> coeff;
  double mult = 0.0;
  raw_mode_shape(g, e.q1, e.q2, e.is_sin, i1, i2, coeff, mult);
  const double* beta = beta_.data() + (e.r - 1) * nz;
  const std::complex<double>* col = field + g.spec_index(i1, i2, 0);
  double acc = 0.0;
  for (int j = 1; j < support_; ++j) {
    acc += g.wt(j) * beta[j] * (col[j].real() * coeff.real() +
                                col[j].imag() * coeff.imag());
  }
  return Grid::kArea * g.h() * mult * acc;
}

double NoiseBasis::raw_e_spatial_pairing(
    int i, const std::complex<double>* field) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  const RawElement& e = raw_[i];
  int i1 = 0, i2 = 0;
  std::complex<double> coeff;
  double mult = 0.0;
  raw_mode_shape(g, e.q1, e.q2, e.is_sin, i1, i2, coeff, mult);
  const double q2 = static_cast<double>(e.q1) * e.q1 +
                    static_cast<double>(e.q2) * e.q2;
  const double* beta = beta_.data() + (e.r - 1) * nz;
  const double* dbeta = dbeta_.data() + (e.r - 1) * nz;
  const double invh2 = static_cast<double>(g.n3()) * g.n3();
  const std::complex<double>* col = field + g.spec_index(i1, i2, 0);
  double acc = 0.0;
  for (int j = 1; j < nz - 1; ++j) {
    const double rb = beta[j];
    const double rl = dbeta[j] - q2 * beta[j];
    if (rb == 0.0 && rl == 0.0) continue;
    const std::complex<double> fl =
        (col[j - 1] - 2.0 * col[j] + col[j + 1]) * invh2 - q2 * col[j];
    acc += g.wt(j) * (rb * (col[j].real() * coeff.real() +
                            col[j].imag() * coeff.imag()) +
                      rl * (fl.real() * coeff.real() +
                            fl.imag() * coeff.imag()));
  }
  return Grid::kArea * g.h() * mult * acc;
}

void NoiseBasis::raw_spatial_products(int i, int k, double& l2,
                                      double& lap) const {
  const Grid& g = *grid_;
  const int nz = g.nz();
  const RawElement& a = raw_[i];
  const RawElement& b = raw_[k];
  l2 = 0.0;
  lap = 0.0;
  if (a.q1 != b.q1 || a.q2 != b.q2 || a.is_sin != b.is_sin) return;
  const double q2 = static_cast<double>(a.q1) * a.q1 +
                    static_cast<double>(a.q2) * a.q2;
  const double cfac =
      (a.q1 == 0 && a.q2 == 0) ? Grid::kArea : 0.5 * Grid::kArea;
  const double* ba = beta_.data() + (a.r - 1) * nz;
  const double* bb = beta_.data() + (b.r - 1) * nz;
  const double* da = dbeta_.data() + (a.r - 1) * nz;
  const double* db = dbeta_.data() + (b.r - 1) * nz;
  for (int j = 0; j < nz; ++j) {
    const double wt = g.wt(j);
    l2 += wt * ba[j] * bb[j];
    lap += wt * (da[j] - q2 * ba[j]) * (db[j] - q2 * bb[j]);
  }
  l2 *= cfac * g.h();
  lap *= cfac * g.h();
}

void NoiseBasis::add_basis_element(int j, double t_local, double coeff,
                                   std::complex<double>* out) const {
  std::vector<double> coeffs(opt_.m, 0.0);
  coeffs[j] = coeff;
  add_raw_eval(collapse(coeffs), t_local, out);
}

NoiseSample::NoiseSample(const NoiseBasis& basis, std::uint64_t seed,
                         std::uint64_t chain, std::uint64_t unit,
                         double amplitude_scale)
    : basis_(&basis) {
  const int m = basis.size();
  xi_.resize(m);
  coeffs_.resize(m);
  DrawStream ds(seed, stream::kNoise, chain, unit);
  const double a = basis.options().amplitude * amplitude_scale;
  for (int j = 0; j < m; ++j) {
    xi_[j] = ds.next_bounded();
    coeffs_[j] = a * basis.b(j) * xi_[j];
  }
  raw_weights_ = basis.collapse(coeffs_);
}

void NoiseSample::add_eval(double t_local,
                           std::complex<double>* out) const {
  basis_->add_raw_eval(raw_weights_, t_local, out);
}

}  // namespace benard
