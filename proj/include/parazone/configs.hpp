#pragma once

#include "parazone/seq.hpp"
#include "parazone/seq_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parazone {

enum class ConfigKind { F, Z, Zj, Y, YF5, T, Tj, X, Thm31 };

ConfigKind parse_config_kind(std::string_view name);
const char* to_string(ConfigKind kind);

struct ConfigParams {
    std::uint64_t n = 1;
    std::uint64_t m = 1;
    std::uint64_t j = 3;
    /// For kind F: also require the numeric segments to form a wide set.
    bool wide = false;
};

/// Child of a whisker-tree node: another node, or a leaf naming a numeric
/// group.
struct TreeRef {
    bool leaf = true;
    std::size_t index = 0;

    friend bool operator==(const TreeRef&, const TreeRef&) = default;
};

struct WhiskerNode {
    std::size_t whisker = 0;
    std::vector<TreeRef> children;

    friend bool operator==(const WhiskerNode&, const WhiskerNode&) = default;
};

/// Endpoint order plus geometric constraints. Symbols are dense ids
/// 0..n-1 in order of their L tokens; every group lists its symbols in
/// endpoint order.
struct Config {
    ConfigKind kind = ConfigKind::F;
    ESeq eseq;
    Labels labels;
    std::vector<std::vector<Symbol>> concave_groups;
    std::vector<std::vector<Symbol>> wide_groups;
    std::vector<std::vector<Symbol>> whiskers;
    std::vector<std::vector<Symbol>> numeric_groups;
    std::vector<std::vector<Symbol>> y_groups;
    std::vector<WhiskerNode> tree;
    std::optional<TreeRef> root;
    std::map<std::string, std::uint64_t> meta;

    std::size_t segment_count() const { return labels.size(); }
    /// Dense id of a label; throws when absent.
    Symbol symbol(std::string_view label) const;
};

/// Largest configuration build_config agrees to materialize.
inline constexpr std::uint64_t kMaxConfigSegments = 2'000'000;

Config build_config(ConfigKind kind, const ConfigParams& params = {});

/// Every group symbol exists and each group appears as L_1..L_m R_1..R_m.
void validate_config(const Config& cfg);

nlohmann::json config_to_json(const Config& cfg);
Config config_from_json(const nlohmann::json& j);

/// The eleven-symbol pattern whose endpoint order is the THM31 configuration.
inline constexpr std::string_view kThm31Pattern = "81ab12181cd12dedcbab34bc49434de49";

struct ClampFlags {
    Symbol symbol = 0;
    bool left = false;
    bool right = false;
};

/// Sufficient condition for `u` forcing `cfg`: E(u) matches the endpoint
/// order, clamping holds, and every concave group has an N-shape in u.
struct ForcingCertificate {
    bool valid = false;
    std::string failure;
    /// u symbol -> config symbol.
    std::vector<std::pair<Symbol, Symbol>> endpoint_match;
    std::vector<ClampFlags> clamp_report;
    /// Per concave group, positions in u of the N-shaped subsequence.
    std::vector<std::vector<std::size_t>> nshape_witnesses;
};

ForcingCertificate forcing_certificate(const Seq& u, const Config& cfg);

}  // namespace parazone
