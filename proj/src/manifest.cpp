// SPDX-License-Identifier: Apache-2.0
#include "photostat/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace photostat {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

std::string RunManifest::config_digest() const {
    return fnv1a64_hex(config_json);
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["tool"] = "photostat";
    doc["version"] = kToolVersion;
    doc["command"] = manifest.command_line;
    doc["seed"] = manifest.seed;
    doc["config"] = manifest.config_json.empty()
                        ? nlohmann::ordered_json::object()
                        : nlohmann::ordered_json::parse(manifest.config_json);
    doc["config_digest"] = manifest.config_digest();
    doc["wall_seconds"] = manifest.wall_seconds;
    doc["outputs"] = manifest.outputs;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace photostat
