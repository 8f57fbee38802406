// report.hpp: deterministic JSON reports.
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <json.hpp>

#include <string>

#include "benard/config.hpp"

namespace benard {

using Json = nlohmann::json;

// The configuration as a JSON object of canonical strings plus its hash.
// String values sidestep any float re-formatting, so embedding the config
// never perturbs report bytes.
Json config_json(const RunConfig& config);

// Serializes with sorted keys and two-space indentation, newline-terminated.
// Reports must contain no wall-clock or host-dependent data: byte-identical
// inputs are required to produce byte-identical files.
std::string report_string(const Json& body);

// report_string written to `path` (parent directories created on demand).
void write_report(const std::string& path, const Json& body);

}  // namespace benard
