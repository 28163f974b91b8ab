#include "parazone/invariants.hpp"

#include "parazone/error.hpp"
#include "parazone/patterns.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace parazone {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::string at(Symbol a, std::size_t pos) {
    return "symbol " + std::to_string(a) + " at position " + std::to_string(pos);
}

// Dense ids plus next/previous occurrence links; cheaper than DenseSeq's
// per-symbol vectors when there are millions of symbols.
struct Links {
    std::vector<std::uint32_t> id;
    std::vector<std::uint32_t> first, last;
    std::vector<std::uint32_t> next, prev;

    explicit Links(const std::vector<Symbol>& t) : id(t.size()), next(t.size(), kNone), prev(t.size(), kNone) {
        std::unordered_map<Symbol, std::uint32_t> dense;
        dense.reserve(t.size() / 2 + 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto [it, fresh] = dense.try_emplace(t[i], static_cast<std::uint32_t>(first.size()));
            const std::uint32_t d = it->second;
            id[i] = d;
            if (fresh) {
                first.push_back(static_cast<std::uint32_t>(i));
                last.push_back(static_cast<std::uint32_t>(i));
            } else {
                prev[i] = last[d];
                next[last[d]] = static_cast<std::uint32_t>(i);
                last[d] = static_cast<std::uint32_t>(i);
            }
        }
    }
};

}  // namespace

std::vector<InvariantCheck> hs_invariants(const Seq& s) {
    if (s.size() >= kNone) throw InvalidInput("sequence too long for the invariant suite");
    const auto& t = s.tokens;
    std::vector<InvariantCheck> out;

    {
        InvariantCheck c;
        c.name = "adjacent-distinct";
        auto r = find_adjacent_repeat(t);
        c.ok = !r;
        if (r) c.detail = at(t[*r], *r) + " repeats";
        out.push_back(c);
    }
    {
        InvariantCheck c;
        c.name = "ababa-free";
        auto w = find_ababa(t);
        c.ok = !w;
        if (w)
            c.detail = "symbols " + std::to_string(w->a) + ", " + std::to_string(w->b) + " from position " +
                       std::to_string(w->positions[0]);
        out.push_back(c);
    }
    {
        InvariantCheck c;
        c.name = "abcaccbc-free";
        if (alphabet_size(t) > kAbcaccbcMaxAlphabet) {
            c.skipped = true;
            c.detail = "alphabet above " + std::to_string(kAbcaccbcMaxAlphabet);
        } else {
            auto w = find_abcaccbc(t);
            c.ok = !w;
            if (w) c.detail = "occurrence starting at position " + std::to_string(w->positions.front());
        }
        out.push_back(c);
    }
    {
        InvariantCheck c;
        c.name = "blocks";
        const HsBlockReport r = check_hs_blocks(s);
        c.ok = r.ok();
        if (!r.uniform_length) c.detail = "block lengths differ";
        else if (!r.first_occurrences_in_blocks) c.detail = "a first occurrence lies outside every block";
        else if (!r.blocks_hold_only_first_occurrences) c.detail = "a block holds a repeated symbol";
        out.push_back(c);
    }

    const Links lk(t);
    {
        InvariantCheck c;
        c.name = "two-occurrences";
        c.ok = true;
        // S_1(1) is the lone one-token exception.
        for (std::size_t d = 0; d < lk.first.size() && c.ok && t.size() > 1; ++d)
            if (lk.first[d] == lk.last[d]) {
                c.ok = false;
                c.detail = at(t[lk.first[d]], lk.first[d]) + " occurs once";
            }
        out.push_back(c);
    }
    {
        InvariantCheck c;
        c.name = "n-shape";
        auto b = first_block_without_nshape(s);
        c.ok = !b;
        if (b) c.detail = "block " + std::to_string(*b);
        out.push_back(c);
    }
    {
        // b a ... b ... a with b just before the first a.
        InvariantCheck c;
        c.name = "left-clamped";
        c.ok = true;
        for (const Block& blk : s.blocks) {
            for (std::size_t p = blk.start + 1; p < blk.end() && c.ok; ++p) {
                const std::uint32_t a = lk.id[p];
                if (lk.first[a] != p) continue;  // blocks check reports this
                const std::uint32_t nb = lk.next[p - 1];
                if (nb == kNone || lk.last[a] < nb) {
                    c.ok = false;
                    c.detail = at(t[p], p) + " (rank " + std::to_string(p - blk.start + 1) + ")";
                }
            }
            if (!c.ok) break;
        }
        out.push_back(c);
    }
    {
        // a ... b ... a b with b just after the last a.
        InvariantCheck c;
        c.name = "right-clamped";
        c.ok = true;
        // S_1(1) is the lone one-token exception.
        for (std::size_t d = 0; d < lk.first.size() && c.ok && t.size() > 1; ++d) {
            const std::uint32_t l = lk.last[d];
            if (l + 1 == t.size()) continue;
            const std::uint32_t pb = lk.prev[l + 1];
            if (pb == kNone || pb < lk.first[d]) {
                c.ok = false;
                c.detail = at(t[l], l);
            }
        }
        out.push_back(c);
    }
    return out;
}

bool all_ok(const std::vector<InvariantCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok && !c.skipped; });
}

}  // namespace parazone
