// checkpoint.cpp: binary checkpoint reader/writer.
// Part of benard-mix (MIT license; see LICENSE).
#include "benard/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace benard {

namespace {

constexpr char kMagic[6] = {'B', 'M', 'I', 'X', '1', '\n'};
constexpr int kSchema = 1;

const char* native_order() {
  return std::endian::native == std::endian::little ? "little" : "big";
}

}  // namespace

void save_checkpoint(
    const std::string& path, const Grid& g, const CheckpointMeta& meta,
    const std::vector<std::pair<std::string, const std::complex<double>*>>&
        fields) {
  nlohmann::json h;
  h["schema"] = kSchema;
  h["kind"] = meta.kind;
  h["grid"] = {{"n1", g.n1()}, {"n2", g.n2()}, {"n3", g.n3()}};
  h["layout"] = "spectral-mode-major";
  h["endianness"] = native_order();
  h["time"] = meta.time;
  h["step"] = meta.step;
  // 64-bit identifiers go through strings: JSON numbers stop being exact
  // beyond 2^53.
  h["seed"] = std::to_string(meta.seed);
  h["chain"] = std::to_string(meta.chain);
  h["t_bottom"] = meta.t_bottom;
  h["t_top"] = meta.t_top;
  std::vector<std::string> names;
  names.reserve(fields.size());
  for (const auto& f : fields) names.push_back(f.first);
  h["fields"] = names;

  const std::string header = h.dump();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("checkpoint: cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t len = static_cast<std::uint32_t>(header.size());
  char lenbuf[4] = {static_cast<char>(len & 0xff),
                    static_cast<char>((len >> 8) & 0xff),
                    static_cast<char>((len >> 16) & 0xff),
                    static_cast<char>((len >> 24) & 0xff)};
  out.write(lenbuf, 4);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const auto& f : fields) {
    out.write(reinterpret_cast<const char*>(f.second),
              static_cast<std::streamsize>(g.n_spec() *
                                           sizeof(std::complex<double>)));
  }
  if (!out) throw ConfigError("checkpoint: write failed: " + path);
}

CheckpointMeta load_checkpoint(
    const std::string& path, const Grid& g,
    const std::vector<std::pair<std::string, std::complex<double>*>>& fields) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open: " + path);
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, kMagic, 6) != 0) {
    throw ConfigError("checkpoint: bad magic in " + path);
  }
  char lenbuf[4];
  in.read(lenbuf, 4);
  if (!in) throw ConfigError("checkpoint: truncated header in " + path);
  const std::uint32_t len = (static_cast<std::uint32_t>(
                                 static_cast<unsigned char>(lenbuf[0]))) |
                            (static_cast<std::uint32_t>(
                                 static_cast<unsigned char>(lenbuf[1]))
                             << 8) |
                            (static_cast<std::uint32_t>(
                                 static_cast<unsigned char>(lenbuf[2]))
                             << 16) |
                            (static_cast<std::uint32_t>(
                                 static_cast<unsigned char>(lenbuf[3]))
                             << 24);
  if (len > (1u << 20)) throw ConfigError("checkpoint: oversized header");
  std::string header(len, '\0');
  in.read(header.data(), len);
  if (!in) throw ConfigError("checkpoint: truncated header in " + path);

  nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
  if (h.is_discarded()) throw ConfigError("checkpoint: bad header JSON");
  if (h.value("schema", -1) != kSchema) {
    throw ConfigError("checkpoint: unsupported schema");
  }
  if (h["grid"].value("n1", -1) != g.n1() ||
      h["grid"].value("n2", -1) != g.n2() ||
      h["grid"].value("n3", -1) != g.n3()) {
    throw ConfigError("checkpoint: grid mismatch in " + path);
  }
  if (h.value("endianness", "") != native_order()) {
    throw ConfigError("checkpoint: byte-order mismatch in " + path);
  }
  const auto names = h.value("fields", std::vector<std::string>{});
  if (names.size() != fields.size()) {
    throw ConfigError("checkpoint: field-count mismatch in " + path);
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (names[i] != fields[i].first) {
      throw ConfigError("checkpoint: field-name mismatch: expected " +
                        fields[i].first + ", file has " + names[i]);
    }
  }
  for (const auto& f : fields) {
    in.read(reinterpret_cast<char*>(f.second),
            static_cast<std::streamsize>(g.n_spec() *
                                         sizeof(std::complex<double>)));
  }
  if (!in) throw ConfigError("checkpoint: truncated payload in " + path);

  CheckpointMeta meta;
  meta.kind = h.value("kind", "field");
  meta.time = h.value("time", 0.0);
  meta.step = h.value("step", std::uint64_t{0});
  meta.seed = std::stoull(h.value("seed", std::string("0")));
  meta.chain = std::stoull(h.value("chain", std::string("0")));
  meta.t_bottom = h.value("t_bottom", 0.0);
  meta.t_top = h.value("t_top", 0.0);
  return meta;
}

}  // namespace benard
