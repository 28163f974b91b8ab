#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parazone::cli {

std::string sha256_hex(std::string_view data);

/// Record of one CLI run. Digests are SHA-256 hex; captured standard output
/// is listed under the name "<stdout>".
struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    double wall_seconds = 0;
    int exit_status = 0;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

/// Where the manifest goes: the explicit path, else "<primary>.manifest.json".
std::optional<std::string> manifest_path(const std::optional<std::string>& explicit_path,
                                         const std::optional<std::string>& primary_output);

}  // namespace parazone::cli
