#pragma once

// Bit-stable serialization for graphs, deltas and dataset manifests.
// Canonical form: UTF-8 JSON, keys sorted, no whitespace, floats printed with
// fixed 6-decimal notation, one trailing LF. Equal values produce equal bytes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "autopt/netmodel.hpp"

namespace autopt {

inline constexpr int kFormatVersion = 1;

std::string canonical_dump(const Json& j);
std::string sha256_hex(std::string_view bytes);

// Digest of the graph's canonical encoding (what snapshot files embed).
std::string snapshot_digest(const NetworkGraph& g);

std::string write_snapshot(const NetworkGraph& g);
// Verifies structure, format_version and embedded digest.
NetworkGraph read_snapshot(std::string_view bytes);

std::string write_delta(const GraphDelta& d);
GraphDelta read_delta(std::string_view bytes);

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  std::string digest;
  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  Json generator_config;
  std::vector<std::string> kinds;
  std::vector<int> scales;
  std::vector<std::uint64_t> seeds;
  std::vector<ManifestEntry> files;
  bool operator==(const Manifest&) const = default;
};

std::string write_manifest(const Manifest& m);
Manifest read_manifest(std::string_view bytes);
// Re-hashes every listed file; returns one message per mismatch/missing file.
std::vector<std::string> verify_manifest(const Manifest& m, const std::filesystem::path& base_dir);

std::string read_file(const std::filesystem::path& p);
// Writes to a temp sibling and renames, so failures never leave partial files.
void write_file_atomic(const std::filesystem::path& p, std::string_view bytes);

}  // namespace autopt
