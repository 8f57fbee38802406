// test_config.cpp: configuration parsing, validation, canonical hashing.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "benard/config.hpp"
#include "benard/errors.hpp"

namespace benard {
namespace {

TEST(Config, DefaultsValidate) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.warnings().empty());
}

TEST(Config, SetParsesTypedValues) {
  RunConfig c;
  c.set("grid.n1", "16");
  c.set("phys.rayleigh", "2.5e3");
  c.set("sim.seed", "42");
  c.set("mix.init", "conduction");
  EXPECT_EQ(c.n1, 16);
  EXPECT_DOUBLE_EQ(c.rayleigh, 2.5e3);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.mix_init, "conduction");
}

TEST(Config, UnknownKeyNamesTheKey) {
  RunConfig c;
  try {
    c.set("grid.bogus", "1");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("grid.bogus"), std::string::npos);
  }
}

TEST(Config, MalformedNumberIsRejected) {
  RunConfig c;
  EXPECT_THROW(c.set("grid.n1", "abc"), ConfigError);
  EXPECT_THROW(c.set("phys.rayleigh", ""), ConfigError);
}

TEST(Config, LayerMustAlignWithTheGrid) {
  RunConfig c;
  c.set("noise.c", "0.3");  // 0.3 * 32 = 9.6 vertical cells
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("noise.c"), std::string::npos);
  }
  c.set("noise.c", "0.25");
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, StableStratificationWarnsButValidates) {
  RunConfig c;
  c.set("phys.t_bottom", "0.0");
  c.set("phys.t_top", "0.165");
  EXPECT_NO_THROW(c.validate());
  EXPECT_FALSE(c.warnings().empty());
}

TEST(Config, MixInitIsValidated) {
  RunConfig c;
  c.set("mix.init", "checkpoint:/tmp/state.bmix");
  EXPECT_NO_THROW(c.validate());
  c.set("mix.init", "nonsense");
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, CanonicalIsSortedAndComplete) {
  RunConfig c;
  const std::string canon = c.canonical();
  const auto items = c.items();
  ASSERT_GT(items.size(), 10u);
  for (std::size_t i = 1; i < items.size(); ++i) {
    EXPECT_LT(items[i - 1].first, items[i].first);  // strictly sorted keys
  }
  for (const auto& [key, value] : items) {
    EXPECT_NE(canon.find(key + "=" + value), std::string::npos) << key;
  }
}

TEST(Config, HashIgnoresExecutionDetails) {
  RunConfig a, b;
  b.workers = 8;
  b.out_dir = "/somewhere/else";
  EXPECT_EQ(a.hash(), b.hash());
  RunConfig c;
  c.set("sim.seed", "2");
  EXPECT_NE(a.hash(), c.hash());
}

TEST(Config, HashIsStableAcrossInstances) {
  RunConfig a, b;
  a.set("grid.n1", "16");
  b.set("grid.n1", "16");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.canonical(), b.canonical());
}

TEST(Config, LoadReadsFilesWithCommentsAndOverrides) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "benard-config-tests";
  fs::create_directories(dir);
  const fs::path file = dir / "run.cfg";
  {
    std::ofstream out(file);
    out << "# reference run\n";
    out << "grid.n1 = 16\n";
    out << "\n";
    out << "phys.rayleigh = 5e3\n";
  }
  const RunConfig c =
      RunConfig::load(file.string(), {"phys.rayleigh=7e3", "sim.units=2"});
  EXPECT_EQ(c.n1, 16);
  EXPECT_DOUBLE_EQ(c.rayleigh, 7.0e3);  // override wins over the file
  EXPECT_EQ(c.units, 2);
  fs::remove_all(dir);

  EXPECT_THROW(RunConfig::load((dir / "missing.cfg").string(), {}),
               ConfigError);
}

TEST(Config, FromOverridesRejectsMalformedAssignments) {
  EXPECT_THROW(RunConfig::from_overrides({"grid.n1"}), ConfigError);
  EXPECT_NO_THROW(RunConfig::from_overrides({"grid.n1=16"}));
}

}  // namespace
}  // namespace benard
