// checkpoint.hpp: binary state files (magic + JSON header + raw payload).
// Part of benard-mix (MIT license; see LICENSE).
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "benard/grid.hpp"

namespace benard {

// Header metadata stored as JSON after the 6-byte magic "BMIX1\n" and a
// little-endian uint32 header length. The payload is the listed fields'
// retained spectral coefficients as interleaved (re, im) float64 in the
// file's recorded byte order, written mode-major. Spectral payloads make
// save/load round trips bit-exact.
struct CheckpointMeta {
  std::string kind = "field";  // "field" or "chain"
  double time = 0.0;
  std::uint64_t step = 0;   // completed unit-time steps
  std::uint64_t seed = 0;   // chain checkpoints: RNG seed
  std::uint64_t chain = 0;  // chain checkpoints: chain index
  double t_bottom = 0.0;
  double t_top = 0.0;
};

void save_checkpoint(
    const std::string& path, const Grid& g, const CheckpointMeta& meta,
    const std::vector<std::pair<std::string, const std::complex<double>*>>&
        fields);

// Loads into the caller's buffers; field names and order must match the file.
// Validates magic, schema, grid shape, byte order, and field names, throwing
// ConfigError on any mismatch.
CheckpointMeta load_checkpoint(
    const std::string& path, const Grid& g,
    const std::vector<std::pair<std::string, std::complex<double>*>>& fields);

}  // namespace benard
