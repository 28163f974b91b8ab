#include "parazone/seq.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace parazone {

namespace {

Symbol max_symbol_plus_one(std::span<const Symbol> tokens) {
    Symbol m = 0;
    for (Symbol s : tokens) m = std::max(m, s + 1);
    return m;
}

Symbol max_symbol_plus_one(std::span<const Endpoint> tokens) {
    Symbol m = 0;
    for (const auto& e : tokens) m = std::max(m, e.symbol + 1);
    return m;
}

/// Uniform block length, or throws with `what` as context.
std::size_t uniform_block_length(std::span<const Block> blocks, const char* what) {
    if (blocks.empty()) return 0;
    const std::size_t len = blocks.front().length;
    for (const auto& b : blocks)
        if (b.length != len)
            throw InvalidInput(std::string(what) + ": special blocks have different lengths");
    return len;
}

}  // namespace

void validate_blocks(std::span<const Block> blocks, std::size_t token_count) {
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.end() > token_count)
            throw InvalidInput("block " + std::to_string(i) + " [" + std::to_string(b.start) + ", " +
                               std::to_string(b.end()) + ") exceeds sequence length " +
                               std::to_string(token_count));
        if (i > 0 && b.start < prev_end)
            throw InvalidInput("block " + std::to_string(i) + " overlaps or precedes block " +
                               std::to_string(i - 1));
        prev_end = b.end();
    }
}

void validate_eseq(const ESeq& e) {
    validate_blocks(e.blocks, e.tokens.size());
    std::unordered_map<Symbol, std::pair<int, int>> seen;
    for (const auto& t : e.tokens) {
        auto& [l, r] = seen[t.symbol];
        if (t.side == Side::L) {
            if (l > 0 || r > 0)
                throw InvalidInput("endpoint sequence: L token of symbol " + std::to_string(t.symbol) +
                                   " repeated or after its R token");
            ++l;
        } else {
            if (l == 0 || r > 0)
                throw InvalidInput("endpoint sequence: R token of symbol " + std::to_string(t.symbol) +
                                   " repeated or before its L token");
            ++r;
        }
    }
    for (const auto& [sym, lr] : seen)
        if (lr.second == 0)
            throw InvalidInput("endpoint sequence: symbol " + std::to_string(sym) + " has no R token");
    for (const auto& b : e.blocks)
        for (std::size_t i = b.start; i < b.end(); ++i)
            if (e.tokens[i].side != Side::L)
                throw InvalidInput("endpoint sequence: a special block contains an R token");
}

Seq make_seq(std::vector<Symbol> tokens, std::vector<Block> blocks, bool require_hs) {
    validate_blocks(blocks, tokens.size());
    Seq s{std::move(tokens), std::move(blocks)};
    if (require_hs) {
        const auto report = check_hs_blocks(s);
        if (!report.uniform_length) throw InvalidInput("special blocks have different lengths");
        if (!report.blocks_hold_only_first_occurrences)
            throw InvalidInput("a special block contains a non-first occurrence");
        if (!report.first_occurrences_in_blocks)
            throw InvalidInput("a first occurrence lies outside every special block");
    }
    return s;
}

HsBlockReport check_hs_blocks(const Seq& s) {
    HsBlockReport report;
    if (!s.blocks.empty()) report.block_length = s.blocks.front().length;
    for (const auto& b : s.blocks)
        if (b.length != report.block_length) report.uniform_length = false;

    std::unordered_set<Symbol> seen;
    seen.reserve(s.tokens.size());
    std::size_t block = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        while (block < s.blocks.size() && s.blocks[block].end() <= i) ++block;
        const bool in_block = block < s.blocks.size() && s.blocks[block].contains(i);
        const bool first = seen.insert(s.tokens[i]).second;
        if (first && !in_block) report.first_occurrences_in_blocks = false;
        if (!first && in_block) report.blocks_hold_only_first_occurrences = false;
    }
    return report;
}

namespace {

// First-appearance renaming; a flat table when symbols are small, as they are
// after a shuffle.
template <class T, class Get, class Make>
std::vector<T> rename_tokens(const std::vector<T>& in, Get get, Make make) {
    std::vector<T> out;
    out.reserve(in.size());
    Symbol hi = 0;
    for (const auto& t : in) hi = std::max(hi, get(t));
    if (hi <= 4 * in.size() + 64) {
        constexpr Symbol unset = std::numeric_limits<Symbol>::max();
        std::vector<Symbol> table(in.empty() ? 0 : hi + 1, unset);
        Symbol next = 0;
        for (const auto& t : in) {
            Symbol& r = table[get(t)];
            if (r == unset) r = next++;
            out.push_back(make(t, r));
        }
        return out;
    }
    std::unordered_map<Symbol, Symbol> rename;
    for (const auto& t : in) {
        auto it = rename.try_emplace(get(t), static_cast<Symbol>(rename.size())).first;
        out.push_back(make(t, it->second));
    }
    return out;
}

}  // namespace

Seq canonicalize(const Seq& s) {
    return {rename_tokens(s.tokens, [](Symbol t) { return t; }, [](Symbol, Symbol r) { return r; }), s.blocks};
}

ESeq canonicalize(const ESeq& e) {
    return {rename_tokens(
                e.tokens, [](const Endpoint& t) { return t.symbol; },
                [](const Endpoint& t, Symbol r) { return Endpoint{t.side, r}; }),
            e.blocks};
}

std::size_t alphabet_size(std::span<const Symbol> tokens) {
    return std::unordered_set<Symbol>(tokens.begin(), tokens.end()).size();
}

Shuffled<Seq> shuffle_with_naming(const Seq& a, const Seq& b) {
    const std::size_t k = a.blocks.size();
    if (k == 0) throw InvalidInput("shuffle: the first operand has no special blocks");
    const std::size_t m = uniform_block_length(a.blocks, "shuffle (first operand)");
    if (m == 0) throw InvalidInput("shuffle: the first operand has empty special blocks");
    for (const auto& g : b.blocks)
        if (g.length != k)
            throw InvalidInput("shuffle: second operand has a block of length " +
                               std::to_string(g.length) + ", expected " + std::to_string(k));

    const FreshNaming fresh{max_symbol_plus_one(b.tokens), max_symbol_plus_one(a.tokens)};
    const std::size_t ell = b.blocks.size();

    Seq out;
    out.tokens.reserve(b.tokens.size() + ell * (a.tokens.size() + k + 1));
    out.blocks.reserve(k * ell);

    std::size_t bpos = 0;
    for (std::size_t i = 0; i < ell; ++i) {
        const Block& gamma = b.blocks[i];
        out.tokens.insert(out.tokens.end(), b.tokens.begin() + bpos, b.tokens.begin() + gamma.start);

        std::size_t apos = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const Block& delta = a.blocks[j];
            for (; apos < delta.start; ++apos) out.tokens.push_back(fresh(i, a.tokens[apos]));
            const std::size_t start = out.tokens.size();
            for (; apos < delta.end(); ++apos) out.tokens.push_back(fresh(i, a.tokens[apos]));
            out.tokens.push_back(b.tokens[gamma.start + j]);
            out.blocks.push_back({start, m + 1});
            out.tokens.push_back(fresh(i, a.tokens[delta.start + m - 1]));
        }
        for (; apos < a.tokens.size(); ++apos) out.tokens.push_back(fresh(i, a.tokens[apos]));
        out.tokens.push_back(b.tokens[gamma.start + k - 1]);
        bpos = gamma.end();
    }
    out.tokens.insert(out.tokens.end(), b.tokens.begin() + bpos, b.tokens.end());
    return {std::move(out), fresh};
}

Seq shuffle(const Seq& a, const Seq& b) { return shuffle_with_naming(a, b).seq; }

Shuffled<ESeq> endpoint_shuffle_with_naming(const ESeq& a, const ESeq& b) {
    const std::size_t k = a.blocks.size();
    const std::size_t m = uniform_block_length(a.blocks, "endpoint shuffle (first operand)");
    for (const auto& g : b.blocks)
        if (g.length != k)
            throw InvalidInput("endpoint shuffle: second operand has a block of length " +
                               std::to_string(g.length) + ", expected " + std::to_string(k));

    const FreshNaming fresh{max_symbol_plus_one(b.tokens), max_symbol_plus_one(a.tokens)};
    const std::size_t ell = b.blocks.size();
    auto renamed = [&](std::size_t copy, const Endpoint& e) {
        return Endpoint{e.side, fresh(copy, e.symbol)};
    };

    ESeq out;
    out.tokens.reserve(b.tokens.size() + ell * a.tokens.size());
    out.blocks.reserve(k * ell);

    std::size_t bpos = 0;
    for (std::size_t i = 0; i < ell; ++i) {
        const Block& gamma = b.blocks[i];
        out.tokens.insert(out.tokens.end(), b.tokens.begin() + bpos, b.tokens.begin() + gamma.start);

        std::size_t apos = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const Block& delta = a.blocks[j];
            for (; apos < delta.start; ++apos) out.tokens.push_back(renamed(i, a.tokens[apos]));
            const std::size_t start = out.tokens.size();
            for (; apos < delta.end(); ++apos) out.tokens.push_back(renamed(i, a.tokens[apos]));
            out.tokens.push_back(b.tokens[gamma.start + j]);
            out.blocks.push_back({start, m + 1});
        }
        for (; apos < a.tokens.size(); ++apos) out.tokens.push_back(renamed(i, a.tokens[apos]));
        bpos = gamma.end();
    }
    out.tokens.insert(out.tokens.end(), b.tokens.begin() + bpos, b.tokens.end());
    return {std::move(out), fresh};
}

ESeq endpoint_shuffle(const ESeq& a, const ESeq& b) { return endpoint_shuffle_with_naming(a, b).seq; }

ESeq endpoint_seq(const Seq& u) {
    validate_blocks(u.blocks, u.tokens.size());
    std::unordered_map<Symbol, std::pair<std::size_t, std::size_t>> span;
    span.reserve(u.tokens.size());
    for (std::size_t i = 0; i < u.tokens.size(); ++i) {
        auto [it, inserted] = span.try_emplace(u.tokens[i], i, i);
        it->second.second = i;
    }
    for (const auto& [sym, range] : span)
        if (range.first == range.second)
            throw InvalidInput("endpoint sequence: symbol " + std::to_string(sym) +
                               " occurs only once");

    ESeq out;
    out.tokens.reserve(2 * span.size());
    std::size_t block = 0;
    std::size_t block_begin = 0;
    for (std::size_t i = 0; i <= u.tokens.size(); ++i) {
        // Blocks open and close relative to the output position.
        while (block < u.blocks.size() && u.blocks[block].start == i && u.blocks[block].length == 0) {
            out.blocks.push_back({out.tokens.size(), 0});
            ++block;
        }
        if (block < u.blocks.size() && u.blocks[block].start == i) block_begin = out.tokens.size();
        if (i == u.tokens.size()) break;

        const auto& range = span.at(u.tokens[i]);
        const bool in_block = block < u.blocks.size() && u.blocks[block].contains(i);
        if (range.first == i) {
            out.tokens.push_back({Side::L, u.tokens[i]});
        } else if (range.second == i) {
            if (in_block)
                throw InvalidInput("endpoint sequence: a special block contains a last occurrence");
            out.tokens.push_back({Side::R, u.tokens[i]});
        }
        if (in_block && u.blocks[block].end() == i + 1) {
            out.blocks.push_back({block_begin, out.tokens.size() - block_begin});
            ++block;
        }
    }
    return out;
}

std::size_t rank_of(const Seq& s, Symbol a) {
    const auto it = std::find(s.tokens.begin(), s.tokens.end(), a);
    if (it == s.tokens.end()) throw InvalidInput("rank: symbol " + std::to_string(a) + " is absent");
    const auto index = static_cast<std::size_t>(it - s.tokens.begin());
    for (const auto& b : s.blocks)
        if (b.contains(index)) return index - b.start + 1;
    throw InvalidInput("rank: the first occurrence of symbol " + std::to_string(a) +
                       " lies outside every special block");
}

Seq restrict(const Seq& s, const std::function<bool(Symbol)>& keep) {
    Seq out;
    std::size_t block = 0;
    std::size_t block_begin = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        while (block < s.blocks.size() && s.blocks[block].length == 0 && s.blocks[block].start <= i)
            ++block;
        if (block < s.blocks.size() && s.blocks[block].start == i) block_begin = out.tokens.size();
        if (keep(s.tokens[i])) out.tokens.push_back(s.tokens[i]);
        if (block < s.blocks.size() && s.blocks[block].end() == i + 1) {
            if (out.tokens.size() > block_begin)
                out.blocks.push_back({block_begin, out.tokens.size() - block_begin});
            ++block;
        }
    }
    return out;
}

Seq restrict(const Seq& s, std::span<const Symbol> keep) {
    const std::unordered_set<Symbol> set(keep.begin(), keep.end());
    return restrict(s, [&](Symbol x) { return set.count(x) != 0; });
}

Seq reversed(const Seq& s) {
    Seq out{{s.tokens.rbegin(), s.tokens.rend()}, {}};
    const std::size_t n = s.tokens.size();
    for (auto it = s.blocks.rbegin(); it != s.blocks.rend(); ++it)
        out.blocks.push_back({n - it->end(), it->length});
    return out;
}

DenseSeq::DenseSeq(std::span<const Symbol> source) {
    auto& rename = index_;
    rename.reserve(source.size());
    tokens.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        auto [it, inserted] = rename.try_emplace(source[i], static_cast<std::uint32_t>(symbol_of.size()));
        if (inserted) {
            symbol_of.push_back(source[i]);
            positions.emplace_back();
        }
        tokens.push_back(it->second);
        positions[it->second].push_back(static_cast<std::uint32_t>(i));
    }
}

std::uint32_t DenseSeq::find(Symbol s) const {
    const auto it = index_.find(s);
    return it == index_.end() ? static_cast<std::uint32_t>(symbol_of.size()) : it->second;
}

}  // namespace parazone
