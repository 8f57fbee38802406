// rng.cpp: bounded-noise inverse CDF.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/rng.hpp"

#include <algorithm>
#include <cmath>

namespace benard {

namespace {
// CDF of rho(x) = (15/16)(1 - x^2)^2 on [-1, 1].
inline double bounded_cdf(double x) {
  return 0.5 + (15.0 / 16.0) * (x - 2.0 * x * x * x / 3.0 +
                                x * x * x * x * x / 5.0);
}
}  // namespace

double bounded_noise_icdf(double u) {
  u = std::clamp(u, 1e-300, 1.0 - 1e-16);
  double lo = -1.0, hi = 1.0;
  double x = 2.0 * u - 1.0;
  for (int it = 0; it < 200; ++it) {
    double fx = bounded_cdf(x) - u;
    if (fx > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double one_minus_x2 = 1.0 - x * x;
    double dfx = (15.0 / 16.0) * one_minus_x2 * one_minus_x2;
    double xn = dfx > 1e-13 ? x - fx / dfx : 0.5 * (lo + hi);
    // Keep the iterate inside the current bracket; bisect when Newton leaves.
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 1e-16) return xn;
    x = xn;
  }
  return x;
}

}  // namespace benard
