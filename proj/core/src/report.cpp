// report.cpp: deterministic JSON reports.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/report.hpp"

#include <filesystem>
#include <fstream>

#include "benard/errors.hpp"

namespace benard {

Json config_json(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [key, value] : config.items()) {
    j[key] = value;
  }
  Json wrap = Json::object();
  wrap["hash"] = config.hash();
  wrap["values"] = std::move(j);
  return wrap;
}

std::string report_string(const Json& body) {
  // nlohmann objects iterate in key order, so dump() is canonical already.
  return body.dump(2) + "\n";
}

void write_report(const std::string& path, const Json& body) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) {
      throw ConfigError("report: cannot create directory '" +
                        p.parent_path().string() + "'");
    }
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("report: cannot open '" + path + "' for write");
  out << report_string(body);
  if (!out) throw ConfigError("report: write to '" + path + "' failed");
}

}  // namespace benard
