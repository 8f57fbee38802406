// test_checkpoint.cpp: binary state files — bit-exact round trips and
// header validation.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <complex>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "benard/checkpoint.hpp"
#include "benard/errors.hpp"
#include "benard/field.hpp"
#include "benard/grid.hpp"
#include "benard/transforms.hpp"
#include "test_util.hpp"

namespace benard {
namespace {

namespace fs = std::filesystem;

class CheckpointTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "benard-ckpt-tests";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CheckpointTest, RoundTripIsBitExact) {
  Grid g(8, 8, 8);
  Fft fft(g);
  ScalarField a(g), b(g);
  test::random_state(g, fft, 21, 0, a.spec());
  test::random_state(g, fft, 21, 1, b.spec());

  CheckpointMeta meta;
  meta.kind = "chain";
  meta.time = 12.5;
  meta.step = 12;
  meta.seed = 99;
  meta.chain = 3;
  meta.t_bottom = 0.165;
  meta.t_top = 0.0;
  save_checkpoint(path("state.bmix"), g, meta,
                  {{"temperature_deviation", a.spec()}, {"aux", b.spec()}});

  ScalarField ra(g), rb(g);
  CheckpointMeta got = load_checkpoint(
      path("state.bmix"), g,
      {{"temperature_deviation", ra.spec()}, {"aux", rb.spec()}});
  EXPECT_EQ(0, std::memcmp(a.spec(), ra.spec(),
                           g.n_spec() * sizeof(std::complex<double>)));
  EXPECT_EQ(0, std::memcmp(b.spec(), rb.spec(),
                           g.n_spec() * sizeof(std::complex<double>)));
  EXPECT_EQ(got.kind, "chain");
  EXPECT_DOUBLE_EQ(got.time, 12.5);
  EXPECT_EQ(got.step, 12u);
  EXPECT_EQ(got.seed, 99u);
  EXPECT_EQ(got.chain, 3u);
  EXPECT_DOUBLE_EQ(got.t_bottom, 0.165);
  EXPECT_DOUBLE_EQ(got.t_top, 0.0);
}

TEST_F(CheckpointTest, RejectsCorruptMagic) {
  Grid g(8, 8, 8);
  ScalarField a(g);
  a.zero();
  save_checkpoint(path("m.bmix"), g, CheckpointMeta{}, {{"f", a.spec()}});
  {
    std::fstream io(path("m.bmix"),
                    std::ios::in | std::ios::out | std::ios::binary);
    io.seekp(0);
    io.put('X');
  }
  EXPECT_THROW(load_checkpoint(path("m.bmix"), g, {{"f", a.spec()}}),
               ConfigError);
}

TEST_F(CheckpointTest, RejectsGridMismatch) {
  Grid g(8, 8, 8);
  ScalarField a(g);
  a.zero();
  save_checkpoint(path("g.bmix"), g, CheckpointMeta{}, {{"f", a.spec()}});
  Grid other(8, 8, 16);
  ScalarField buf(other);
  EXPECT_THROW(load_checkpoint(path("g.bmix"), other, {{"f", buf.spec()}}),
               ConfigError);
}

TEST_F(CheckpointTest, RejectsFieldNameMismatch) {
  Grid g(8, 8, 8);
  ScalarField a(g);
  a.zero();
  save_checkpoint(path("n.bmix"), g, CheckpointMeta{}, {{"f", a.spec()}});
  EXPECT_THROW(load_checkpoint(path("n.bmix"), g, {{"other", a.spec()}}),
               ConfigError);
}

TEST_F(CheckpointTest, RejectsMissingFile) {
  Grid g(8, 8, 8);
  ScalarField a(g);
  EXPECT_THROW(load_checkpoint(path("absent.bmix"), g, {{"f", a.spec()}}),
               ConfigError);
}

}  // namespace
}  // namespace benard
