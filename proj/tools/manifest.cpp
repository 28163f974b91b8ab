#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace parazone::cli {

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

namespace {

nlohmann::json digests(const std::vector<std::pair<std::string, std::string>>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& [name, sha] : v) arr.push_back({{"name", name}, {"sha256", sha}});
    return arr;
}

std::vector<std::pair<std::string, std::string>> digests_from(const nlohmann::json& j) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : j) out.emplace_back(e.at("name").get<std::string>(), e.at("sha256").get<std::string>());
    return out;
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["inputs"] = digests(inputs);
    j["outputs"] = digests(outputs);
    j["wall_seconds"] = wall_seconds;
    j["exit_status"] = exit_status;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.inputs = digests_from(j.at("inputs"));
    m.outputs = digests_from(j.at("outputs"));
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.exit_status = j.value("exit_status", 0);
    return m;
}

std::optional<std::string> manifest_path(const std::optional<std::string>& explicit_path,
                                         const std::optional<std::string>& primary_output) {
    if (explicit_path) return explicit_path;
    if (primary_output) return *primary_output + ".manifest.json";
    return std::nullopt;
}

}  // namespace parazone::cli
