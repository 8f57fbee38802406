// test_report.cpp: deterministic JSON report serialization.
// Part of benard-mix (MIT license; see LICENSE).
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "benard/config.hpp"
#include "benard/report.hpp"

namespace benard {
namespace {

TEST(Report, ConfigJsonCarriesStringsAndHash) {
  RunConfig c;
  const Json j = config_json(c);
  ASSERT_TRUE(j.is_object());
  ASSERT_TRUE(j.contains("hash"));
  EXPECT_EQ(j["hash"].get<std::string>(), c.hash());
  // Every semantic key appears, and every value is a string (no float
  // re-formatting can perturb the bytes).
  for (const auto& [key, value] : c.items()) {
    ASSERT_TRUE(j.contains(key)) << key;
    ASSERT_TRUE(j[key].is_string()) << key;
    EXPECT_EQ(j[key].get<std::string>(), value) << key;
  }
}

TEST(Report, SerializationIsDeterministic) {
  Json a;
  a["zeta"] = 1.25;
  a["alpha"] = Json::array({1, 2, 3});
  a["mid"] = Json{{"b", true}, {"a", "x"}};
  Json b;  // same content, inserted in a different order
  b["mid"] = Json{{"a", "x"}, {"b", true}};
  b["alpha"] = Json::array({1, 2, 3});
  b["zeta"] = 1.25;
  EXPECT_EQ(report_string(a), report_string(b));
}

TEST(Report, StringIsSortedIndentedAndNewlineTerminated) {
  Json body;
  body["b"] = 2;
  body["a"] = 1;
  const std::string s = report_string(body);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.back(), '\n');
  const auto pa = s.find("\"a\"");
  const auto pb = s.find("\"b\"");
  ASSERT_NE(pa, std::string::npos);
  ASSERT_NE(pb, std::string::npos);
  EXPECT_LT(pa, pb);                                  // keys sorted
  EXPECT_NE(s.find("  \"a\""), std::string::npos);    // two-space indent
}

TEST(Report, WriteCreatesParentDirectories) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "benard-report-tests";
  fs::remove_all(root);
  const fs::path file = root / "deep" / "nested" / "out.json";
  Json body;
  body["value"] = 7;
  write_report(file.string(), body);
  ASSERT_TRUE(fs::exists(file));
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), report_string(body));
  fs::remove_all(root);
}

}  // namespace
}  // namespace benard
