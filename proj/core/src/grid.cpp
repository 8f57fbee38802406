// grid.cpp: grid validation and retained-mode enumeration.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/grid.hpp"

#include <string>

namespace benard {

Grid::Grid(int n1, int n2, int n3) : n1_(n1), n2_(n2), n3_(n3) {
  if (n1 < 6 || n2 < 6 || n1 % 2 != 0 || n2 % 2 != 0) {
    throw ConfigError("grid: horizontal sizes must be even and >= 6, got " +
                      std::to_string(n1) + " x " + std::to_string(n2));
  }
  if (n3 < 4) {
    throw ConfigError("grid: need at least 4 vertical intervals, got " +
                      std::to_string(n3));
  }
  modes_.reserve(static_cast<std::size_t>(n1_) * n_half2());
  for (int i1 = 0; i1 < n1_; ++i1) {
    for (int i2 = 0; i2 < n_half2(); ++i2) {
      if (!is_active(i1, i2)) continue;
      Mode m;
      m.i1 = i1;
      m.i2 = i2;
      m.k1 = k1_of(i1);
      m.k2 = i2;
      m.kappa2 = static_cast<double>(m.k1) * m.k1 +
                 static_cast<double>(m.k2) * m.k2;
      m.offset = spec_index(i1, i2, 0);
      m.weight = (i2 == 0 || i2 == n2_ / 2) ? 1.0 : 2.0;
      modes_.push_back(m);
    }
  }
}

}  // namespace benard
