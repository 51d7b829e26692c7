// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_MANIFEST_HPP
#define PHOTOSTAT_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace photostat {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Provenance record written next to every command's outputs. The digest
/// is FNV-1a over the canonical config JSON, so identical configurations
/// always produce the same digest.
struct RunManifest {
    std::string command_line;
    std::uint64_t seed = 0;
    std::string config_json;  // canonical (sorted-key) serialization
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;

    std::string config_digest() const;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace photostat

#endif
