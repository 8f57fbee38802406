// test_observables.cpp: random ball states and the bounded observable
// dictionary.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/norms.hpp"
#include "benard/observables.hpp"
#include "benard/rng.hpp"
#include "benard/transforms.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

TEST(Observables, BallFieldHasExactRadius) {
  Grid g(8, 8, 8);
  ScalarField f(g);
  for (double radius : {0.02, 1.0, 250.0}) {
    random_ball_field(g, 11, test::kTestStream, 0, radius, f);
    EXPECT_NEAR(h1_norm(g, f.spec()), radius, 1.0e-12 * radius);
  }
}

TEST(Observables, BallFieldIsDeterministicPerChain) {
  Grid g(8, 8, 8);
  ScalarField a(g), b(g), c(g);
  random_ball_field(g, 11, test::kTestStream, 4, 1.0, a);
  random_ball_field(g, 11, test::kTestStream, 4, 1.0, b);
  random_ball_field(g, 11, test::kTestStream, 5, 1.0, c);
  double same = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < g.n_spec(); ++i) {
    same = std::max(same, std::abs(a.spec()[i] - b.spec()[i]));
    diff = std::max(diff, std::abs(a.spec()[i] - c.spec()[i]));
  }
  EXPECT_EQ(same, 0.0);
  EXPECT_GT(diff, 0.0);
}

TEST(Observables, LowModeFieldsConsumeTheStreamInFixedOrder) {
  Grid g(8, 8, 8);
  ComplexArray a(g.n_spec()), b(g.n_spec());
  a.fill_zero();
  b.fill_zero();
  DrawStream s1(3, test::kTestStream, 7, 0);
  DrawStream s2(3, test::kTestStream, 7, 0);
  add_low_mode_field(g, s1, 2, 3, a.data());
  add_low_mode_field(g, s2, 2, 3, b.data());
  for (std::size_t i = 0; i < g.n_spec(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Observables, DictionaryIsBoundedByOne) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ObservableDictionary dict(g, 8, 77);
  ASSERT_EQ(dict.size(), 8);
  ScalarField s(g);
  test::random_state(g, fft, 13, 0, s.spec(), 1.0e6);  // enormous state
  for (int i = 0; i < dict.size(); ++i) {
    const double v = dict.evaluate(i, s.spec());
    EXPECT_LE(std::abs(v), 1.0);
  }
}

TEST(Observables, DictionaryMatchesItsDefinition) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ObservableDictionary dict(g, 4, 77);
  ScalarField s(g);
  test::random_state(g, fft, 14, 0, s.spec());
  for (int i = 0; i < dict.size(); ++i) {
    const double manual =
        std::tanh(l2_inner(g, dict.field(i), s.spec()) / dict.scale(i));
    EXPECT_NEAR(dict.evaluate(i, s.spec()), manual, 1.0e-14);
    EXPECT_NEAR(dict.scale(i), l2_norm(g, dict.field(i)),
                1.0e-12 * dict.scale(i));
  }
}

TEST(Observables, DictionariesWithEqualSeedsCoincide) {
  Grid g(8, 8, 8);
  ObservableDictionary a(g, 6, 42), b(g, 6, 42), c(g, 6, 43);
  bool differs = false;
  for (int i = 0; i < 6; ++i) {
    for (std::size_t k = 0; k < g.n_spec(); ++k) {
      EXPECT_EQ(a.field(i)[k], b.field(i)[k]);
      differs |= (a.field(i)[k] != c.field(i)[k]);
    }
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace benard
