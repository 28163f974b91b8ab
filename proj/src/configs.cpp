#include "parazone/configs.hpp"

#include "parazone/error.hpp"
#include "parazone/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace parazone {

namespace {

enum class Role : std::uint8_t { Numeric, Whisker, Y };

struct Tag {
    Role role = Role::Numeric;
    std::uint32_t letter = 0;
    std::size_t group = 0;
};

/// Configuration under construction. Tree leaves index blocks of `e` until
/// the numeric groups are frozen, after which they index numeric_groups.
struct Draft {
    ESeq e;
    std::unordered_map<Symbol, Tag> tags;
    std::vector<std::vector<Symbol>> whiskers;
    std::vector<std::vector<Symbol>> y_groups;
    std::vector<std::vector<Symbol>> numeric_groups;
    std::vector<WhiskerNode> tree;
    std::optional<TreeRef> root;
    bool frozen = false;
};

struct SymbolCounter {
    Symbol next = 0;
    Symbol operator()() { return next++; }
};

void push_left(Draft& d, Symbol s) { d.e.tokens.push_back({Side::L, s}); }
void push_right(Draft& d, Symbol s) { d.e.tokens.push_back({Side::R, s}); }

/// Appends F_m as a block of L tokens followed by the R tokens.
void append_f(Draft& d, SymbolCounter& next, std::uint64_t m) {
    std::vector<Symbol> syms;
    const std::size_t start = d.e.tokens.size();
    for (std::uint64_t i = 0; i < m; ++i) {
        syms.push_back(next());
        d.tags[syms.back()] = {Role::Numeric, 0, 0};
        push_left(d, syms.back());
    }
    d.e.blocks.push_back({start, static_cast<std::size_t>(m)});
    for (Symbol s : syms) push_right(d, s);
}

Draft make_f(std::uint64_t m) {
    Draft d;
    SymbolCounter next;
    append_f(d, next, m);
    return d;
}

Draft make_z(std::uint64_t m) {
    Draft d;
    SymbolCounter next;
    const Symbol a = next(), b = next(), c = next();
    d.tags[a] = {Role::Whisker, 0, 0};
    d.tags[b] = {Role::Whisker, 1, 0};
    d.tags[c] = {Role::Whisker, 2, 0};
    d.whiskers.push_back({a, b, c});
    push_left(d, a);
    push_left(d, b);
    append_f(d, next, m);
    push_left(d, c);
    push_right(d, a);
    append_f(d, next, m);
    push_right(d, b);
    push_right(d, c);
    d.tree.push_back({0, {TreeRef{true, 0}, TreeRef{true, 1}}});
    d.root = TreeRef{false, 0};
    return d;
}

Draft make_zj(std::uint64_t j, std::uint64_t m) {
    Draft d;
    SymbolCounter next;
    std::vector<Symbol> whisker;
    for (std::uint64_t i = 0; i < j; ++i) {
        whisker.push_back(next());
        d.tags[whisker.back()] = {Role::Whisker, static_cast<std::uint32_t>(i), 0};
    }
    d.whiskers.push_back(whisker);
    for (std::uint64_t i = 0; i < j; ++i) {
        if (i > 0) append_f(d, next, m);
        push_left(d, whisker[i]);
    }
    for (std::uint64_t i = 0; i < j; ++i) {
        if (i > 0) append_f(d, next, m);
        push_right(d, whisker[i]);
    }
    WhiskerNode node{0, {}};
    for (std::size_t leaf = 0; leaf < 2 * j - 2; ++leaf) node.children.push_back({true, leaf});
    d.tree.push_back(node);
    d.root = TreeRef{false, 0};
    return d;
}

Draft make_y() {
    Draft d;
    const Symbol dd = 0, e = 1, f = 2;
    d.tags[dd] = {Role::Y, 0, 0};
    d.tags[e] = {Role::Y, 1, 0};
    d.tags[f] = {Role::Y, 2, 0};
    d.y_groups.push_back({dd, e, f});
    auto gap = [&] { d.e.blocks.push_back({d.e.tokens.size(), 0}); };
    push_left(d, dd);
    push_left(d, e);
    gap();
    gap();
    push_left(d, f);
    push_right(d, dd);
    gap();
    gap();
    push_right(d, e);
    push_right(d, f);
    gap();
    return d;
}

void freeze_numeric(Draft& d) {
    d.numeric_groups.clear();
    for (const auto& b : d.e.blocks) {
        std::vector<Symbol> group;
        for (std::size_t i = b.start; i < b.end(); ++i) group.push_back(d.e.tokens[i].symbol);
        d.numeric_groups.push_back(std::move(group));
    }
    d.frozen = true;
}

/// A ∘ B with tags, whiskers and the whisker tree carried through.
Draft tagged_shuffle(const Draft& a, const Draft& b) {
    const auto sh = endpoint_shuffle_with_naming(a.e, b.e);
    const std::size_t k = a.e.blocks.size();
    const std::size_t ell = b.e.blocks.size();
    if (a.frozen) throw InvalidInput("internal: first shuffle operand has frozen numeric groups");

    Draft r;
    r.e = sh.seq;
    r.tags = b.tags;
    r.whiskers = b.whiskers;
    r.y_groups = b.y_groups;
    for (std::size_t i = 0; i < ell; ++i) {
        const std::size_t w_off = r.whiskers.size();
        const std::size_t y_off = r.y_groups.size();
        for (const auto& [s, t] : a.tags) {
            Tag copy = t;
            if (t.role == Role::Whisker) copy.group += w_off;
            if (t.role == Role::Y) copy.group += y_off;
            r.tags[sh.naming(i, s)] = copy;
        }
        auto rename = [&](const std::vector<Symbol>& g) {
            std::vector<Symbol> out;
            for (Symbol s : g) out.push_back(sh.naming(i, s));
            return out;
        };
        for (const auto& w : a.whiskers) r.whiskers.push_back(rename(w));
        for (const auto& y : a.y_groups) r.y_groups.push_back(rename(y));
    }

    if (b.frozen) {
        // Second operand's blocks dissolve; its numeric groups and tree stay.
        if (a.root) throw InvalidInput("internal: cannot nest a whisker tree into frozen groups");
        r.numeric_groups = b.numeric_groups;
        r.tree = b.tree;
        r.root = b.root;
        r.frozen = true;
        return r;
    }

    // Copy i of A's tree replaces B's leaf i; A's leaf j becomes block i*k+j.
    std::vector<TreeRef> copy_root(ell);
    r.tree = b.tree;
    for (std::size_t i = 0; i < ell; ++i) {
        const std::size_t node_off = r.tree.size();
        const std::size_t w_off = b.whiskers.size() + i * a.whiskers.size();
        for (const auto& node : a.tree) {
            WhiskerNode n{node.whisker + w_off, {}};
            for (const auto& c : node.children)
                n.children.push_back(c.leaf ? TreeRef{true, i * k + c.index} : TreeRef{false, c.index + node_off});
            r.tree.push_back(std::move(n));
        }
        if (a.root) {
            copy_root[i] = a.root->leaf ? TreeRef{true, i * k + a.root->index} : TreeRef{false, a.root->index + node_off};
        } else if (k == 1) {
            copy_root[i] = TreeRef{true, i};
        } else if (b.root) {
            throw InvalidInput("internal: first operand has several blocks but no whisker tree");
        }
    }
    for (std::size_t n = 0; n < b.tree.size(); ++n)
        for (auto& c : r.tree[n].children)
            if (c.leaf) c = copy_root.at(c.index);
    if (b.root) {
        r.root = b.root->leaf ? copy_root.at(b.root->index) : *b.root;
    } else if (ell == 1) {
        r.root = copy_root[0];
        if (!a.root && k != 1) r.root.reset();
    }
    return r;
}

std::string whisker_letter(std::uint32_t letter, bool indexed_letters) {
    if (!indexed_letters) return std::string(1, static_cast<char>('a' + letter));
    return "a" + std::to_string(letter + 1);
}

/// Renames symbols densely by L order, sorts groups, and generates labels.
Config finish(ConfigKind kind, Draft d, bool indexed_letters) {
    std::unordered_map<Symbol, Symbol> rename;
    for (const auto& t : d.e.tokens)
        if (t.side == Side::L) rename.emplace(t.symbol, rename.size());
    auto map_groups = [&](std::vector<std::vector<Symbol>>& groups) {
        for (auto& g : groups) {
            for (auto& s : g) s = rename.at(s);
            std::sort(g.begin(), g.end());
        }
    };

    Config cfg;
    cfg.kind = kind;
    cfg.eseq = d.e;
    for (auto& t : cfg.eseq.tokens) t.symbol = rename.at(t.symbol);
    map_groups(d.whiskers);
    map_groups(d.y_groups);
    map_groups(d.numeric_groups);

    // Whisker and Y copies are numbered by the position of their first L.
    auto order_of = [](const std::vector<std::vector<Symbol>>& groups) {
        std::vector<std::size_t> idx(groups.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return groups[x].front() < groups[y].front(); });
        std::vector<std::size_t> rank(groups.size());
        for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = r;
        return rank;
    };
    const auto whisker_rank = order_of(d.whiskers);
    const auto y_rank = order_of(d.y_groups);

    cfg.labels.assign(rename.size(), "");
    std::uint64_t numeric = 0;
    std::vector<Symbol> by_id(rename.size());
    for (const auto& [old_sym, id] : rename) by_id[id] = old_sym;
    for (Symbol id = 0; id < by_id.size(); ++id) {
        const Tag& t = d.tags.at(by_id[id]);
        switch (t.role) {
            case Role::Numeric: cfg.labels[id] = std::to_string(++numeric); break;
            case Role::Whisker: {
                std::string name = whisker_letter(t.letter, indexed_letters);
                if (d.whiskers.size() > 1)
                    name += (indexed_letters ? "_" : "") + std::to_string(whisker_rank[t.group] + 1);
                cfg.labels[id] = name;
                break;
            }
            case Role::Y: {
                std::string name(1, static_cast<char>('d' + t.letter));
                if (d.y_groups.size() > 1) name += std::to_string(y_rank[t.group] + 1);
                cfg.labels[id] = name;
                break;
            }
        }
    }

    // Store whiskers and Y groups in label order; remap tree references.
    auto reorder = [](std::vector<std::vector<Symbol>>& groups, const std::vector<std::size_t>& rank) {
        std::vector<std::vector<Symbol>> out(groups.size());
        for (std::size_t i = 0; i < groups.size(); ++i) out[rank[i]] = std::move(groups[i]);
        groups = std::move(out);
    };
    reorder(d.whiskers, whisker_rank);
    reorder(d.y_groups, y_rank);
    for (auto& node : d.tree) node.whisker = whisker_rank[node.whisker];

    cfg.whiskers = std::move(d.whiskers);
    cfg.y_groups = std::move(d.y_groups);
    cfg.numeric_groups = std::move(d.numeric_groups);
    cfg.tree = std::move(d.tree);
    cfg.root = d.root;

    for (const auto& g : cfg.whiskers) cfg.concave_groups.push_back(g);
    for (const auto& g : cfg.y_groups) cfg.concave_groups.push_back(g);
    for (const auto& g : cfg.numeric_groups) cfg.concave_groups.push_back(g);

    std::uint64_t numeric_segments = 0;
    for (const auto& g : cfg.numeric_groups) numeric_segments += g.size();
    cfg.meta["segment_total"] = cfg.labels.size();
    cfg.meta["whiskers"] = cfg.whiskers.size();
    cfg.meta["y_copies"] = cfg.y_groups.size();
    cfg.meta["numeric_groups"] = cfg.numeric_groups.size();
    cfg.meta["numeric_segments"] = numeric_segments;
    cfg.meta["special_blocks"] = cfg.eseq.blocks.size();
    cfg.meta["block_length"] = cfg.eseq.blocks.empty() ? 0 : cfg.eseq.blocks.front().length;
    return cfg;
}

void check_size(long double segments) {
    if (segments > static_cast<long double>(kMaxConfigSegments))
        throw BudgetExceeded("configuration would have about " + std::to_string(static_cast<double>(segments)) +
                             " segments, above the limit of " + std::to_string(kMaxConfigSegments));
}

Draft make_t(std::uint64_t n) {
    if (n < 1) throw InvalidInput("T needs n >= 1");
    check_size(std::ldexp(static_cast<long double>(n + 2), static_cast<int>(std::min<std::uint64_t>(n, 4000))));
    Draft acc = make_z(1);
    for (std::uint64_t k = 1; k < n; ++k) acc = tagged_shuffle(acc, make_z(std::uint64_t{1} << k));
    acc = tagged_shuffle(acc, make_f(std::uint64_t{1} << n));
    freeze_numeric(acc);
    return acc;
}

Draft make_tj(std::uint64_t j, std::uint64_t n) {
    if (j < 3) throw InvalidInput("Tj needs j >= 3");
    if (n < 1) throw InvalidInput("Tj needs n >= 1");
    const long double base = static_cast<long double>(2 * j - 2);
    check_size((static_cast<long double>(n) + 1 + static_cast<long double>(j)) * std::pow(base, static_cast<long double>(n)));
    Draft acc = make_zj(j, 1);
    std::uint64_t width = 2 * j - 2;
    std::uint64_t m = width;
    for (std::uint64_t k = 1; k < n; ++k) {
        acc = tagged_shuffle(acc, make_zj(j, m));
        m *= width;
    }
    acc = tagged_shuffle(acc, make_f(m));
    freeze_numeric(acc);
    return acc;
}

Config make_thm31() {
    const ParsedSeq u = parse_seq_text(kThm31Pattern);
    const ESeq e = endpoint_seq(u.seq);
    Config cfg;
    cfg.kind = ConfigKind::Thm31;
    std::unordered_map<Symbol, Symbol> rename;
    for (const auto& t : e.tokens)
        if (t.side == Side::L) rename.emplace(t.symbol, rename.size());
    cfg.eseq = e;
    for (auto& t : cfg.eseq.tokens) t.symbol = rename.at(t.symbol);
    cfg.labels.resize(rename.size());
    for (const auto& [old_sym, id] : rename) cfg.labels[id] = u.labels[old_sym];
    auto group = [&](std::string_view names) {
        std::vector<Symbol> g;
        for (char c : names) g.push_back(cfg.symbol(std::string(1, c)));
        std::sort(g.begin(), g.end());
        return g;
    };
    cfg.whiskers = {group("812"), group("349")};
    cfg.concave_groups = {group("812"), group("349"), group("abcde")};
    cfg.meta["segment_total"] = cfg.labels.size();
    cfg.meta["whiskers"] = 2;
    return cfg;
}

std::vector<std::string> labels_of(const Config& cfg, const std::vector<Symbol>& group) {
    std::vector<std::string> out;
    for (Symbol s : group) out.push_back(cfg.labels.at(s));
    return out;
}

nlohmann::json groups_to_json(const Config& cfg, const std::vector<std::vector<Symbol>>& groups) {
    auto arr = nlohmann::json::array();
    for (const auto& g : groups) arr.push_back(labels_of(cfg, g));
    return arr;
}

std::vector<std::vector<Symbol>> groups_from_json(const Config& cfg, const nlohmann::json& j, const char* key) {
    std::vector<std::vector<Symbol>> out;
    if (!j.contains(key)) return out;
    for (const auto& g : j.at(key)) {
        std::vector<Symbol> group;
        for (const auto& name : g) group.push_back(cfg.symbol(name.get<std::string>()));
        out.push_back(std::move(group));
    }
    return out;
}

nlohmann::json ref_to_json(const TreeRef& r) { return {{"leaf", r.leaf}, {"index", r.index}}; }

TreeRef ref_from_json(const nlohmann::json& j) { return {j.at("leaf").get<bool>(), j.at("index").get<std::size_t>()}; }

}  // namespace

ConfigKind parse_config_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "f") return ConfigKind::F;
    if (lower == "z") return ConfigKind::Z;
    if (lower == "zj") return ConfigKind::Zj;
    if (lower == "y") return ConfigKind::Y;
    if (lower == "yf5") return ConfigKind::YF5;
    if (lower == "t") return ConfigKind::T;
    if (lower == "tj") return ConfigKind::Tj;
    if (lower == "x") return ConfigKind::X;
    if (lower == "thm31") return ConfigKind::Thm31;
    throw InvalidInput("unknown configuration kind '" + std::string(name) + "'");
}

const char* to_string(ConfigKind kind) {
    switch (kind) {
        case ConfigKind::F: return "F";
        case ConfigKind::Z: return "Z";
        case ConfigKind::Zj: return "Zj";
        case ConfigKind::Y: return "Y";
        case ConfigKind::YF5: return "YF5";
        case ConfigKind::T: return "T";
        case ConfigKind::Tj: return "Tj";
        case ConfigKind::X: return "X";
        case ConfigKind::Thm31: return "thm31";
    }
    return "?";
}

Symbol Config::symbol(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw InvalidInput("configuration has no segment labelled '" + std::string(label) + "'");
}

Config build_config(ConfigKind kind, const ConfigParams& params) {
    switch (kind) {
        case ConfigKind::F: {
            if (params.m < 1) throw InvalidInput("F needs m >= 1");
            check_size(static_cast<long double>(params.m));
            Draft d = make_f(params.m);
            freeze_numeric(d);
            Config cfg = finish(kind, std::move(d), false);
            if (params.wide) cfg.wide_groups = cfg.numeric_groups;
            cfg.meta["wide"] = params.wide ? 1 : 0;
            return cfg;
        }
        case ConfigKind::Z: {
            if (params.m < 1) throw InvalidInput("Z needs m >= 1");
            check_size(static_cast<long double>(2 * params.m + 3));
            Draft d = make_z(params.m);
            freeze_numeric(d);
            return finish(kind, std::move(d), false);
        }
        case ConfigKind::Zj: {
            if (params.j < 3) throw InvalidInput("Zj needs j >= 3");
            if (params.m < 1) throw InvalidInput("Zj needs m >= 1");
            check_size(static_cast<long double>(params.j) * (1.0L + 2.0L * static_cast<long double>(params.m)));
            Draft d = make_zj(params.j, params.m);
            freeze_numeric(d);
            return finish(kind, std::move(d), true);
        }
        case ConfigKind::Y: {
            Config cfg = finish(kind, make_y(), false);
            return cfg;
        }
        case ConfigKind::YF5: {
            Draft f = make_f(5);
            freeze_numeric(f);
            Config cfg = finish(kind, tagged_shuffle(make_y(), f), false);
            cfg.wide_groups = cfg.numeric_groups;
            return cfg;
        }
        case ConfigKind::T: return finish(kind, make_t(params.n), false);
        case ConfigKind::Tj: return finish(kind, make_tj(params.j, params.n), true);
        case ConfigKind::X: return finish(kind, tagged_shuffle(make_y(), make_t(4)), false);
        case ConfigKind::Thm31: return make_thm31();
    }
    throw InvalidInput("unknown configuration kind");
}

void validate_config(const Config& cfg) {
    validate_eseq(cfg.eseq);
    const std::size_t n = cfg.labels.size();
    std::vector<std::size_t> lpos(n, 0), rpos(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < cfg.eseq.size(); ++i) {
        const auto& t = cfg.eseq.tokens[i];
        if (t.symbol >= n) throw InvalidInput("endpoint symbol without a label");
        (t.side == Side::L ? lpos : rpos)[t.symbol] = i;
        seen[t.symbol] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw InvalidInput("a labelled segment has no endpoints");
    auto check = [&](const std::vector<std::vector<Symbol>>& groups, const char* what) {
        for (const auto& g : groups) {
            for (Symbol s : g)
                if (s >= n) throw InvalidInput(std::string(what) + " group references an unknown segment");
            for (std::size_t i = 1; i < g.size(); ++i)
                if (!(lpos[g[i - 1]] < lpos[g[i]] && rpos[g[i - 1]] < rpos[g[i]]))
                    throw InvalidInput(std::string(what) + " group is not in L_1..L_m R_1..R_m order");
            if (!g.empty() && !(lpos[g.back()] < rpos[g.front()]))
                throw InvalidInput(std::string(what) + " group is not in L_1..L_m R_1..R_m order");
        }
    };
    check(cfg.concave_groups, "concave");
    check(cfg.wide_groups, "wide");
}

nlohmann::json config_to_json(const Config& cfg) {
    nlohmann::json j;
    j["kind"] = to_string(cfg.kind);
    const auto e = eseq_to_json(cfg.eseq, &cfg.labels);
    j["endpoints"] = e.at("tokens");
    j["blocks"] = e.at("blocks");
    j["concave_groups"] = groups_to_json(cfg, cfg.concave_groups);
    j["wide_groups"] = groups_to_json(cfg, cfg.wide_groups);
    j["whiskers"] = groups_to_json(cfg, cfg.whiskers);
    j["numeric_groups"] = groups_to_json(cfg, cfg.numeric_groups);
    j["y_groups"] = groups_to_json(cfg, cfg.y_groups);
    auto nodes = nlohmann::json::array();
    for (const auto& node : cfg.tree) {
        auto children = nlohmann::json::array();
        for (const auto& c : node.children) children.push_back(ref_to_json(c));
        nodes.push_back({{"whisker", node.whisker}, {"children", children}});
    }
    j["tree"] = {{"nodes", nodes}, {"root", cfg.root ? ref_to_json(*cfg.root) : nlohmann::json(nullptr)}};
    j["meta"] = cfg.meta;
    return j;
}

Config config_from_json(const nlohmann::json& j) {
    try {
        Config cfg;
        cfg.kind = parse_config_kind(j.value("kind", std::string("F")));
        const auto parsed = parse_eseq_json({{"tokens", j.at("endpoints")}, {"blocks", j.value("blocks", nlohmann::json::array())}});
        // Relabel densely by L order so groups and trees use canonical ids.
        std::unordered_map<Symbol, Symbol> rename;
        for (const auto& t : parsed.eseq.tokens)
            if (t.side == Side::L) rename.emplace(t.symbol, rename.size());
        cfg.eseq = parsed.eseq;
        for (auto& t : cfg.eseq.tokens) t.symbol = rename.at(t.symbol);
        cfg.labels.resize(rename.size());
        for (const auto& [old_sym, id] : rename) cfg.labels[id] = parsed.labels[old_sym];
        cfg.concave_groups = groups_from_json(cfg, j, "concave_groups");
        cfg.wide_groups = groups_from_json(cfg, j, "wide_groups");
        cfg.whiskers = groups_from_json(cfg, j, "whiskers");
        cfg.numeric_groups = groups_from_json(cfg, j, "numeric_groups");
        cfg.y_groups = groups_from_json(cfg, j, "y_groups");
        if (j.contains("tree")) {
            const auto& t = j.at("tree");
            for (const auto& node : t.at("nodes")) {
                WhiskerNode n{node.at("whisker").get<std::size_t>(), {}};
                for (const auto& c : node.at("children")) n.children.push_back(ref_from_json(c));
                cfg.tree.push_back(std::move(n));
            }
            if (t.contains("root") && !t.at("root").is_null()) cfg.root = ref_from_json(t.at("root"));
        }
        if (j.contains("meta")) cfg.meta = j.at("meta").get<std::map<std::string, std::uint64_t>>();
        validate_config(cfg);
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed configuration JSON: ") + e.what());
    }
}

ForcingCertificate forcing_certificate(const Seq& u, const Config& cfg) {
    ForcingCertificate cert;
    if (u.empty()) throw InvalidInput("forcing certificate needs a non-empty sequence");
    const ESeq eu = endpoint_seq(u);

    if (eu.size() != cfg.eseq.size()) {
        cert.failure = "E(u) has " + std::to_string(eu.size()) + " endpoints, the configuration has " +
                       std::to_string(cfg.eseq.size());
        return cert;
    }
    std::unordered_map<Symbol, Symbol> to_cfg;
    std::unordered_map<Symbol, Symbol> to_u;
    for (std::size_t i = 0; i < eu.size(); ++i) {
        const auto& a = eu.tokens[i];
        const auto& b = cfg.eseq.tokens[i];
        const auto [it, fresh] = to_cfg.try_emplace(a.symbol, b.symbol);
        const auto [jt, fresh_back] = to_u.try_emplace(b.symbol, a.symbol);
        if (a.side != b.side || it->second != b.symbol || jt->second != a.symbol) {
            cert.failure = "E(u) does not match the endpoint order at position " + std::to_string(i + 1);
            return cert;
        }
        if (fresh) cert.endpoint_match.emplace_back(a.symbol, b.symbol);
    }

    const Symbol first = u.tokens.front();
    const Symbol last = u.tokens.back();
    std::string clamp_failure;
    for (const auto& [usym, csym] : cert.endpoint_match) {
        ClampFlags f{usym, is_left_clamped(u.tokens, usym), is_right_clamped(u.tokens, usym)};
        cert.clamp_report.push_back(f);
        if (!clamp_failure.empty()) continue;
        const std::string name = csym < cfg.labels.size() ? cfg.labels[csym] : std::to_string(csym);
        if (usym != first && !f.left) clamp_failure = "symbol " + name + " is not left-clamped";
        else if (usym != last && !f.right) clamp_failure = "symbol " + name + " is not right-clamped";
    }
    if (!clamp_failure.empty()) {
        cert.failure = clamp_failure;
        return cert;
    }

    for (std::size_t g = 0; g < cfg.concave_groups.size(); ++g) {
        std::vector<Symbol> group;
        for (Symbol s : cfg.concave_groups[g]) group.push_back(to_u.at(s));
        auto w = find_nshape(u.tokens, group);
        if (!w) {
            cert.failure = "no N-shaped subsequence for concave group " + std::to_string(g + 1);
            cert.nshape_witnesses.clear();
            return cert;
        }
        cert.nshape_witnesses.push_back(std::move(*w));
    }
    cert.valid = true;
    return cert;
}

}  // namespace parazone
