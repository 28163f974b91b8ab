#include "parazone/seq_io.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace parazone {

namespace {

constexpr std::string_view kCompactAlphabet =
    "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

/// Words plus the block table in word indices.
struct Lexed {
    std::vector<std::string> words;
    std::vector<Block> blocks;
};

Lexed lex(std::string_view text, bool char_mode) {
    Lexed out;
    bool open = false;
    std::size_t block_start = 0;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) out.words.push_back(std::move(current));
        current.clear();
    };
    for (char c : text) {
        if (c == '(') {
            flush();
            if (open) throw InvalidInput("nested '(' in sequence text");
            open = true;
            block_start = out.words.size();
        } else if (c == ')') {
            flush();
            if (!open) throw InvalidInput("unmatched ')' in sequence text");
            open = false;
            out.blocks.push_back({block_start, out.words.size() - block_start});
        } else if (is_space(c)) {
            flush();
        } else if (char_mode) {
            out.words.emplace_back(1, c);
        } else {
            current.push_back(c);
        }
    }
    flush();
    if (open) throw InvalidInput("unterminated '(' in sequence text");
    return out;
}

class Interner {
public:
    Symbol operator()(const std::string& name) {
        auto [it, inserted] = ids_.try_emplace(name, labels_.size());
        if (inserted) labels_.push_back(name);
        return it->second;
    }
    Labels take() { return std::move(labels_); }

private:
    std::unordered_map<std::string, Symbol> ids_;
    Labels labels_;
};

Endpoint parse_endpoint_word(const std::string& w, Interner& intern) {
    if (w.size() < 3 || (w[0] != 'L' && w[0] != 'R') || (w[1] != ':' && w[1] != '_'))
        throw InvalidInput("malformed endpoint token '" + w + "' (expected L:name or R:name)");
    return {w[0] == 'L' ? Side::L : Side::R, intern(w.substr(2))};
}

std::vector<Block> parse_blocks_json(const nlohmann::json& j) {
    std::vector<Block> blocks;
    if (!j.contains("blocks")) return blocks;
    for (const auto& b : j.at("blocks")) {
        if (!b.is_array() || b.size() != 2)
            throw InvalidInput("block entries must be [start, length] pairs");
        blocks.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>()});
    }
    return blocks;
}

std::string token_name(const nlohmann::json& t) {
    if (t.is_string()) return t.get<std::string>();
    if (t.is_number_integer()) return std::to_string(t.get<long long>());
    throw InvalidInput("sequence tokens must be strings or integers");
}

nlohmann::json blocks_to_json(const std::vector<Block>& blocks) {
    auto arr = nlohmann::json::array();
    for (const auto& b : blocks) arr.push_back({b.start, b.length});
    return arr;
}

/// Names for symbols 0..n-1 after canonical renaming.
Labels default_labels(std::size_t n) {
    Labels names(n);
    for (std::size_t i = 0; i < n; ++i)
        names[i] = n <= kCompactAlphabet.size() ? default_symbol_name(i) : std::to_string(i + 1);
    return names;
}

const std::string& name_of(const Labels& labels, Symbol s) {
    if (s >= labels.size()) throw InvalidInput("no label for symbol " + std::to_string(s));
    return labels[s];
}

template <class Tok, class Name>
std::string format_tokens(const std::vector<Tok>& tokens, const std::vector<Block>& blocks,
                          bool compact, Name name) {
    std::string out;
    std::size_t b = 0;
    bool need_space = false;
    auto sep = [&] {
        if (!compact && need_space) out.push_back(' ');
    };
    for (std::size_t i = 0; i <= tokens.size(); ++i) {
        while (b < blocks.size() && blocks[b].start == i && blocks[b].length == 0) {
            sep();
            out += "()";
            need_space = true;
            ++b;
        }
        if (i == tokens.size()) break;
        const bool opens = b < blocks.size() && blocks[b].start == i;
        sep();
        if (opens) out.push_back('(');
        out += name(tokens[i]);
        need_space = true;
        if (b < blocks.size() && blocks[b].length > 0 && blocks[b].end() == i + 1) {
            out.push_back(')');
            ++b;
        }
    }
    return out;
}

}  // namespace

std::string default_symbol_name(std::size_t index) {
    if (index < kCompactAlphabet.size()) return std::string(1, kCompactAlphabet[index]);
    return std::to_string(index + 1);
}

ParsedSeq parse_seq_text(std::string_view text) {
    text = trim(text);
    const bool char_mode = std::none_of(text.begin(), text.end(), is_space);
    Lexed lx = lex(text, char_mode);
    Interner intern;
    ParsedSeq out;
    out.seq.tokens.reserve(lx.words.size());
    for (const auto& w : lx.words) out.seq.tokens.push_back(intern(w));
    validate_blocks(lx.blocks, out.seq.tokens.size());
    out.seq.blocks = std::move(lx.blocks);
    out.labels = intern.take();
    return out;
}

ParsedESeq parse_eseq_text(std::string_view text) {
    Lexed lx = lex(trim(text), false);
    Interner intern;
    ParsedESeq out;
    for (const auto& w : lx.words) out.eseq.tokens.push_back(parse_endpoint_word(w, intern));
    out.eseq.blocks = std::move(lx.blocks);
    validate_eseq(out.eseq);
    out.labels = intern.take();
    return out;
}

ParsedSeq parse_seq_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("tokens")) throw InvalidInput("sequence JSON needs a \"tokens\" array");
    Interner intern;
    ParsedSeq out;
    for (const auto& t : j.at("tokens")) out.seq.tokens.push_back(intern(token_name(t)));
    out.seq.blocks = parse_blocks_json(j);
    validate_blocks(out.seq.blocks, out.seq.tokens.size());
    out.labels = intern.take();
    return out;
}

ParsedESeq parse_eseq_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidInput("endpoint sequence JSON must be an object");
    const char* key = j.contains("tokens") ? "tokens" : "endpoints";
    if (!j.contains(key)) throw InvalidInput("endpoint sequence JSON needs a \"tokens\" array");
    Interner intern;
    ParsedESeq out;
    for (const auto& t : j.at(key)) out.eseq.tokens.push_back(parse_endpoint_word(token_name(t), intern));
    out.eseq.blocks = parse_blocks_json(j);
    validate_eseq(out.eseq);
    out.labels = intern.take();
    return out;
}

ParsedSeq parse_seq(std::string_view text) {
    const auto t = trim(text);
    if (!t.empty() && t.front() == '{') {
        try {
            return parse_seq_json(nlohmann::json::parse(t));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("invalid sequence JSON: ") + e.what());
        }
    }
    return parse_seq_text(t);
}

ParsedESeq parse_eseq(std::string_view text) {
    const auto t = trim(text);
    if (!t.empty() && t.front() == '{') {
        try {
            return parse_eseq_json(nlohmann::json::parse(t));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("invalid endpoint sequence JSON: ") + e.what());
        }
    }
    return parse_eseq_text(t);
}

std::string format_seq(const Seq& s, const Labels* labels) {
    if (labels == nullptr) {
        const Seq c = canonicalize(s);
        const Labels names = default_labels(alphabet_size(c.tokens));
        const bool compact = names.size() <= kCompactAlphabet.size();
        return format_tokens(c.tokens, c.blocks, compact,
                             [&](Symbol t) -> const std::string& { return names[t]; });
    }
    bool compact = true;
    for (Symbol t : s.tokens) compact = compact && name_of(*labels, t).size() == 1;
    return format_tokens(s.tokens, s.blocks, compact,
                         [&](Symbol t) -> const std::string& { return name_of(*labels, t); });
}

std::string format_eseq(const ESeq& e, const Labels* labels) {
    auto side = [](const Endpoint& t) { return std::string(t.side == Side::L ? "L:" : "R:"); };
    if (labels == nullptr) {
        const ESeq c = canonicalize(e);
        std::size_t n = 0;
        for (const auto& t : c.tokens) n = std::max<std::size_t>(n, t.symbol + 1);
        const Labels names = default_labels(n);
        return format_tokens(c.tokens, c.blocks, false,
                             [&](const Endpoint& t) { return side(t) + names[t.symbol]; });
    }
    return format_tokens(e.tokens, e.blocks, false,
                         [&](const Endpoint& t) { return side(t) + name_of(*labels, t.symbol); });
}

nlohmann::json seq_to_json(const Seq& s, const Labels* labels) {
    Labels fallback;
    const Seq* src = &s;
    Seq c;
    if (labels == nullptr) {
        c = canonicalize(s);
        fallback = default_labels(alphabet_size(c.tokens));
        src = &c;
        labels = &fallback;
    }
    auto tokens = nlohmann::json::array();
    for (Symbol t : src->tokens) tokens.push_back(name_of(*labels, t));
    return {{"tokens", std::move(tokens)}, {"blocks", blocks_to_json(src->blocks)}};
}

nlohmann::json eseq_to_json(const ESeq& e, const Labels* labels) {
    Labels fallback;
    const ESeq* src = &e;
    ESeq c;
    if (labels == nullptr) {
        c = canonicalize(e);
        std::size_t n = 0;
        for (const auto& t : c.tokens) n = std::max<std::size_t>(n, t.symbol + 1);
        fallback = default_labels(n);
        src = &c;
        labels = &fallback;
    }
    auto tokens = nlohmann::json::array();
    for (const auto& t : src->tokens)
        tokens.push_back(std::string(t.side == Side::L ? "L:" : "R:") + name_of(*labels, t.symbol));
    return {{"tokens", std::move(tokens)}, {"blocks", blocks_to_json(src->blocks)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace parazone
