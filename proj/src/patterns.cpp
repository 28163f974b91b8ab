#include "parazone/patterns.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace parazone {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Max segment tree over (value, index); inactive leaves hold value -1.
class MaxTree {
public:
    explicit MaxTree(std::size_t n) : size_(1) {
        while (size_ < n) size_ <<= 1;
        tree_.assign(2 * size_, {-1, 0});
    }

    void set(std::size_t i, long long value) {
        std::size_t x = i + size_;
        tree_[x] = {value, i};
        for (x >>= 1; x >= 1; x >>= 1) tree_[x] = std::max(tree_[2 * x], tree_[2 * x + 1]);
    }

    /// Max over [lo, hi).
    std::pair<long long, std::size_t> query(std::size_t lo, std::size_t hi) const {
        std::pair<long long, std::size_t> best{-1, 0};
        for (lo += size_, hi += size_; lo < hi; lo >>= 1, hi >>= 1) {
            if (lo & 1) best = std::max(best, tree_[lo++]);
            if (hi & 1) best = std::max(best, tree_[--hi]);
        }
        return best;
    }

private:
    std::size_t size_;
    std::vector<std::pair<long long, std::size_t>> tree_;
};

std::size_t next_occurrence(const std::vector<std::uint32_t>& occ, std::size_t pos) {
    auto it = std::lower_bound(occ.begin(), occ.end(), static_cast<std::uint32_t>(pos));
    return it == occ.end() ? std::numeric_limits<std::size_t>::max() : *it;
}

std::size_t remaining_from(const std::vector<std::uint32_t>& occ, std::size_t pos) {
    return static_cast<std::size_t>(occ.end() -
                                    std::lower_bound(occ.begin(), occ.end(), static_cast<std::uint32_t>(pos)));
}

/// Block id of each dense symbol's first occurrence; symbols outside every
/// block get a private id past the real ones. Also returns 1-based ranks.
struct BlockInfo {
    std::vector<std::size_t> block;
    std::vector<std::size_t> rank;
};

BlockInfo block_info(const Seq& s, const DenseSeq& d) {
    BlockInfo info;
    info.block.resize(d.alphabet());
    info.rank.assign(d.alphabet(), 0);
    std::size_t private_id = s.blocks.size();
    for (std::uint32_t x = 0; x < d.alphabet(); ++x) {
        const std::size_t f = d.first(x);
        auto it = std::upper_bound(s.blocks.begin(), s.blocks.end(), f,
                                   [](std::size_t v, const Block& b) { return v < b.start; });
        if (it != s.blocks.begin() && std::prev(it)->contains(f)) {
            --it;
            info.block[x] = static_cast<std::size_t>(it - s.blocks.begin());
            info.rank[x] = f - it->start + 1;
        } else {
            info.block[x] = private_id++;
        }
    }
    return info;
}

/// Backtracking subsequence matcher over pattern positions. A new pattern
/// symbol branches over host symbols at their next occurrence; a mapped
/// symbol jumps greedily to its next occurrence.
class Matcher {
public:
    Matcher(const DenseSeq& host, const DenseSeq& pattern, std::uint64_t max_steps)
        : host_(host), pat_(pattern), max_steps_(max_steps) {
        const std::size_t len = pat_.size();
        const std::size_t np = pat_.alphabet();
        suffix_.assign((len + 1) * np, 0);
        for (std::size_t i = len; i-- > 0;) {
            std::copy_n(suffix_.begin() + (i + 1) * np, np, suffix_.begin() + i * np);
            ++suffix_[i * np + pat_.tokens[i]];
        }
        map_.assign(np, kNone);
        used_.assign(host_.alphabet(), false);
        positions_.assign(len, 0);
        seen_.assign(np + 1, std::vector<std::uint64_t>(host_.alphabet(), 0));
    }

    void set_blocks(BlockInfo host_blocks, BlockInfo pattern_blocks, std::span<const std::size_t> ranks) {
        host_blocks_ = std::move(host_blocks);
        pat_blocks_ = std::move(pattern_blocks);
        ranks_.assign(ranks.begin(), ranks.end());
        std::size_t max_p = 0;
        std::size_t max_h = 0;
        for (auto b : pat_blocks_.block) max_p = std::max(max_p, b + 1);
        for (auto b : host_blocks_.block) max_h = std::max(max_h, b + 1);
        pblock_to_h_.assign(max_p, kNoBlock);
        hblock_to_p_.assign(max_h, kNoBlock);
        pblock_refs_.assign(max_p, 0);
        structural_ = true;
    }

    std::optional<PatternWitness> run() {
        if (pat_.size() > host_.size() || pat_.alphabet() > host_.alphabet()) return std::nullopt;
        if (!dfs(0, 0, 0)) return std::nullopt;
        PatternWitness w;
        for (std::uint32_t x = 0; x < pat_.alphabet(); ++x)
            w.mapping.emplace_back(pat_.symbol_of[x], host_.symbol_of[map_[x]]);
        w.positions = positions_;
        return w;
    }

private:
    static constexpr std::size_t kNoBlock = std::numeric_limits<std::size_t>::max();

    bool allowed(std::uint32_t x, std::uint32_t h) const {
        if (!structural_) return true;
        if (!ranks_.empty() && pat_blocks_.rank[x] > 0) {
            const std::size_t want = ranks_.at(pat_blocks_.rank[x] - 1);
            if (host_blocks_.rank[h] != want) return false;
        }
        const std::size_t pb = pat_blocks_.block[x];
        const std::size_t hb = host_blocks_.block[h];
        if (pblock_to_h_[pb] != kNoBlock) return pblock_to_h_[pb] == hb;
        return hblock_to_p_[hb] == kNoBlock;
    }

    void assign(std::uint32_t x, std::uint32_t h) {
        map_[x] = h;
        used_[h] = true;
        if (!structural_) return;
        const std::size_t pb = pat_blocks_.block[x];
        if (pblock_refs_[pb]++ == 0) {
            pblock_to_h_[pb] = host_blocks_.block[h];
            hblock_to_p_[host_blocks_.block[h]] = pb;
        }
    }

    void unassign(std::uint32_t x, std::uint32_t h) {
        map_[x] = kNone;
        used_[h] = false;
        if (!structural_) return;
        const std::size_t pb = pat_blocks_.block[x];
        if (--pblock_refs_[pb] == 0) {
            hblock_to_p_[pblock_to_h_[pb]] = kNoBlock;
            pblock_to_h_[pb] = kNoBlock;
        }
    }

    /// Every mapped symbol still has enough host occurrences at or after pos.
    bool counts_feasible(std::size_t i, std::size_t pos) const {
        const std::size_t np = pat_.alphabet();
        for (std::uint32_t y = 0; y < np; ++y) {
            const std::uint32_t need = suffix_[i * np + y];
            if (need == 0 || map_[y] == kNone) continue;
            if (remaining_from(host_.positions[map_[y]], pos) < need) return false;
        }
        return true;
    }

    bool dfs(std::size_t i, std::size_t pos, std::size_t depth) {
        if (i == pat_.size()) return true;
        if (++steps_ > max_steps_)
            throw BudgetExceeded("pattern search exceeded " + std::to_string(max_steps_) + " steps");
        if (host_.size() - pos < pat_.size() - i) return false;
        const std::uint32_t x = pat_.tokens[i];
        if (map_[x] != kNone) {
            const std::size_t p = next_occurrence(host_.positions[map_[x]], pos);
            if (p >= host_.size()) return false;
            positions_[i] = p;
            return dfs(i + 1, p + 1, depth);
        }
        const std::uint32_t need = suffix_[i * pat_.alphabet() + x];
        auto& seen = seen_[depth];
        const std::uint64_t stamp = ++stamp_;
        const std::size_t limit = host_.size() - (pat_.size() - i);
        for (std::size_t p = pos; p <= limit; ++p) {
            const std::uint32_t h = host_.tokens[p];
            if (used_[h] || seen[h] == stamp) continue;
            seen[h] = stamp;
            if (remaining_from(host_.positions[h], p) < need) continue;
            if (!allowed(x, h)) continue;
            assign(x, h);
            positions_[i] = p;
            if (counts_feasible(i + 1, p + 1) && dfs(i + 1, p + 1, depth + 1)) return true;
            unassign(x, h);
        }
        return false;
    }

    const DenseSeq& host_;
    const DenseSeq& pat_;
    std::uint64_t max_steps_;
    std::uint64_t steps_ = 0;
    std::uint64_t stamp_ = 0;
    std::vector<std::uint32_t> suffix_;
    std::vector<std::uint32_t> map_;
    std::vector<bool> used_;
    std::vector<std::size_t> positions_;
    std::vector<std::vector<std::uint64_t>> seen_;

    bool structural_ = false;
    BlockInfo host_blocks_;
    BlockInfo pat_blocks_;
    std::vector<std::size_t> ranks_;
    std::vector<std::size_t> pblock_to_h_;
    std::vector<std::size_t> hblock_to_p_;
    std::vector<std::size_t> pblock_refs_;
};

/// Allocation-free check used by the exhaustive search: does `pattern`
/// embed in `host` with its last token at the host's last position?
/// Both are dense (symbols < 16), host length <= 64.
class TailMatcher {
public:
    TailMatcher(const std::vector<std::uint8_t>& host, const std::vector<std::uint8_t>& pattern)
        : host_(host), pat_(pattern) {
        map_.fill(kFree);
        inv_.fill(kFree);
    }

    bool run() {
        if (pat_.size() > host_.size() || pat_.empty()) return false;
        return match(static_cast<int>(pat_.size()) - 1, static_cast<int>(host_.size()) - 1, true);
    }

private:
    static constexpr std::uint8_t kFree = 0xff;

    bool match(int i, int p, bool forced) {
        if (i < 0) return true;
        const std::uint8_t x = pat_[i];
        const int lowest = i;
        for (int q = p; q >= lowest; --q) {
            const std::uint8_t h = host_[q];
            const bool fresh = map_[x] == kFree;
            if (fresh) {
                if (inv_[h] != kFree) {
                    if (forced) return false;
                    continue;
                }
                map_[x] = h;
                inv_[h] = x;
                if (match(i - 1, q - 1, false)) return true;
                map_[x] = kFree;
                inv_[h] = kFree;
            } else if (map_[x] == h) {
                return match(i - 1, q - 1, false);
            }
            if (forced) return false;
        }
        return false;
    }

    const std::vector<std::uint8_t>& host_;
    const std::vector<std::uint8_t>& pat_;
    std::array<std::uint8_t, 16> map_{};
    std::array<std::uint8_t, 16> inv_{};
};

class ExSearch {
public:
    ExSearch(std::vector<std::vector<std::uint8_t>> forbidden, std::size_t n, std::size_t k)
        : forbidden_(std::move(forbidden)), n_(n), k_(k) {}

    static constexpr std::size_t kMaxLength = 64;

    void run() { extend(0); }

    std::size_t best_length = 0;
    std::vector<std::uint8_t> best;

private:
    void extend(std::size_t used) {
        if (seq_.size() > best_length) {
            best_length = seq_.size();
            best = seq_;
        }
        if (seq_.size() == kMaxLength)
            throw BudgetExceeded("extremal search reached the length cap of " + std::to_string(kMaxLength));
        const std::size_t limit = std::min(used + 1, n_);
        for (std::size_t s = 0; s < limit; ++s) {
            const auto sym = static_cast<std::uint8_t>(s);
            const std::size_t window = std::min(seq_.size(), k_ - 1);
            if (std::find(seq_.end() - static_cast<std::ptrdiff_t>(window), seq_.end(), sym) != seq_.end()) continue;
            seq_.push_back(sym);
            bool ok = true;
            for (const auto& f : forbidden_)
                if (TailMatcher(seq_, f).run()) {
                    ok = false;
                    break;
                }
            if (ok) extend(std::max(used, s + 1));
            seq_.pop_back();
        }
    }

    std::vector<std::vector<std::uint8_t>> forbidden_;
    std::size_t n_;
    std::size_t k_;
    std::vector<std::uint8_t> seq_;
};

}  // namespace

bool has_alternation(std::span<const Symbol> s, Symbol a, Symbol b, std::size_t len) {
    if (a == b) throw InvalidInput("alternation needs two distinct symbols");
    if (len == 0) return true;
    for (Symbol start : {a, b}) {
        Symbol want = start;
        std::size_t got = 0;
        for (Symbol t : s) {
            if (t != want) continue;
            if (++got == len) return true;
            want = want == a ? b : a;
        }
    }
    return false;
}

std::optional<AlternationWitness> find_ababa(std::span<const Symbol> s) {
    const DenseSeq d(s);
    const std::size_t n = d.size();
    if (n < 5) return std::nullopt;

    // Symbols ordered by first occurrence are exactly the dense ids.
    std::vector<std::uint32_t> next_same(n, kNone);
    for (const auto& occ : d.positions)
        for (std::size_t i = 0; i + 1 < occ.size(); ++i) next_same[occ[i]] = occ[i + 1];

    MaxTree tree(n);
    std::uint32_t activated = 0;
    for (std::size_t j = 0; j < n; ++j) {
        while (activated < d.alphabet() && d.first(activated) < j) {
            for (std::uint32_t q : d.positions[activated])
                tree.set(q, static_cast<long long>(d.last(activated)));
            ++activated;
        }
        const std::uint32_t l = next_same[j];
        if (l == kNone || l <= j + 1) continue;
        const auto [value, q] = tree.query(j + 1, l);
        if (value > static_cast<long long>(l)) {
            const std::uint32_t a = d.tokens[q];
            AlternationWitness w;
            w.a = d.symbol_of[a];
            w.b = s[j];
            w.positions = {d.first(a), j, q, l, d.last(a)};
            return w;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> find_adjacent_repeat(std::span<const Symbol> s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1]) return i;
    return std::nullopt;
}

std::optional<PatternWitness> find_abcaccbc(std::span<const Symbol> s) {
    const DenseSeq d(s);
    const std::size_t n = d.size();
    const std::size_t alpha = d.alphabet();
    if (alpha < 3 || n < 8) return std::nullopt;

    // before_last[c * alpha + b]: last occurrence of b before the last c.
    std::vector<long long> before_last(alpha * alpha, -1);
    for (std::uint32_t c = 0; c < alpha; ++c) {
        long long* row = &before_last[c * alpha];
        for (std::size_t p = d.last(c); p-- > 0;)
            if (row[d.tokens[p]] < 0) row[d.tokens[p]] = static_cast<long long>(p);
    }

    std::vector<std::pair<std::size_t, std::uint32_t>> order;
    std::vector<bool> seen(alpha);
    for (std::uint32_t a = 0; a < alpha; ++a) {
        if (d.positions[a].size() < 2) continue;
        const std::size_t fa = d.first(a);
        order.clear();
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t p = fa + 1; p < n; ++p)
            if (!seen[d.tokens[p]]) {
                seen[d.tokens[p]] = true;
                order.emplace_back(p, d.tokens[p]);
            }

        for (std::uint32_t c = 0; c < alpha; ++c) {
            if (c == a || d.positions[c].size() < 4) continue;
            const auto& oc = d.positions[c];
            const long long* row = &before_last[c * alpha];
            std::size_t ptr = 0;
            long long best = -1;
            std::uint32_t best_b = 0;
            std::size_t best_f = 0;
            for (auto it = std::upper_bound(oc.begin(), oc.end(), static_cast<std::uint32_t>(fa)); it != oc.end(); ++it) {
                const std::size_t ci = *it;
                for (; ptr < order.size() && order[ptr].first < ci; ++ptr) {
                    const std::uint32_t b = order[ptr].second;
                    if (b == a || b == c) continue;
                    if (row[b] > best) {
                        best = row[b];
                        best_b = b;
                        best_f = order[ptr].first;
                    }
                }
                const std::size_t p4 = next_occurrence(d.positions[a], ci + 1);
                if (p4 >= n) break;
                const std::size_t p5 = next_occurrence(oc, p4 + 1);
                if (p5 >= n) break;
                const std::size_t p6 = next_occurrence(oc, p5 + 1);
                if (p6 >= n) break;
                if (best > static_cast<long long>(p6)) {
                    PatternWitness w;
                    w.mapping = {{0, d.symbol_of[a]}, {1, d.symbol_of[best_b]}, {2, d.symbol_of[c]}};
                    w.positions = {fa, best_f, ci, p4, p5, p6, static_cast<std::size_t>(best), d.last(c)};
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

bool is_ds_order3(std::span<const Symbol> s) { return !find_adjacent_repeat(s) && !find_ababa(s); }

bool is_k_sparse(std::span<const Symbol> s, std::size_t k) {
    if (k == 0) throw InvalidInput("sparsity parameter must be at least 1");
    std::unordered_map<Symbol, std::size_t> last;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto [it, inserted] = last.try_emplace(s[i], i);
        if (!inserted) {
            if (i - it->second < k) return false;
            it->second = i;
        }
    }
    return true;
}

bool is_left_clamped(std::span<const Symbol> u, Symbol a) {
    const auto first = std::find(u.begin(), u.end(), a);
    if (first == u.end()) throw InvalidInput("symbol " + std::to_string(a) + " does not occur");
    if (first == u.begin()) return false;
    const Symbol b = *(first - 1);
    const auto second_b = std::find(first + 1, u.end(), b);
    return second_b != u.end() && std::find(second_b + 1, u.end(), a) != u.end();
}

bool is_right_clamped(std::span<const Symbol> u, Symbol a) {
    const auto first = std::find(u.begin(), u.end(), a);
    if (first == u.end()) throw InvalidInput("symbol " + std::to_string(a) + " does not occur");
    const auto last = std::find(u.rbegin(), u.rend(), a).base() - 1;
    if (last + 1 == u.end()) return false;
    const Symbol b = *(last + 1);
    return std::find(first + 1, last, b) != last;
}

std::optional<std::size_t> first_block_without_nshape(const Seq& s) {
    for (std::size_t bi = 0; bi < s.blocks.size(); ++bi) {
        const Block& b = s.blocks[bi];
        const std::size_t m = b.length;
        if (m == 0) continue;
        bool ok = b.end() + (m - 1) <= s.size();
        for (std::size_t r = 0; ok && r + 1 < m; ++r)
            ok = s.tokens[b.end() + r] == s.tokens[b.start + m - 2 - r];
        std::size_t pos = b.end() + (m - 1);
        for (std::size_t r = 1; ok && r < m; ++r) {
            while (pos < s.size() && s.tokens[pos] != s.tokens[b.start + r]) ++pos;
            ok = pos < s.size();
            ++pos;
        }
        if (!ok) return bi;
    }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> find_nshape(std::span<const Symbol> u, std::span<const Symbol> group) {
    std::vector<Symbol> target(group.begin(), group.end());
    for (std::size_t i = group.size(); i-- > 1;) target.push_back(group[i - 1]);
    for (std::size_t i = 1; i < group.size(); ++i) target.push_back(group[i]);
    std::vector<std::size_t> positions;
    std::size_t pos = 0;
    for (Symbol t : target) {
        while (pos < u.size() && u[pos] != t) ++pos;
        if (pos == u.size()) return std::nullopt;
        positions.push_back(pos++);
    }
    return positions;
}

std::optional<PatternWitness> contains_isomorphic(std::span<const Symbol> host, std::span<const Symbol> pattern,
                                                  std::uint64_t max_steps) {
    const DenseSeq h(host);
    const DenseSeq p(pattern);
    return Matcher(h, p, max_steps).run();
}

std::optional<PatternWitness> structurally_contains(const Seq& host, const Seq& pattern,
                                                    std::span<const std::size_t> ranks, std::uint64_t max_steps) {
    validate_blocks(host.blocks, host.size());
    validate_blocks(pattern.blocks, pattern.size());
    const DenseSeq h(host.tokens);
    const DenseSeq p(pattern.tokens);
    if (!ranks.empty()) {
        std::size_t m = 0;
        for (const auto& b : pattern.blocks) m = std::max(m, b.length);
        if (ranks.size() != m) throw InvalidInput("rank list length must equal the pattern block length");
        for (std::size_t i = 0; i < ranks.size(); ++i)
            if (ranks[i] == 0 || (i > 0 && ranks[i] <= ranks[i - 1]))
                throw InvalidInput("ranks must be positive and strictly increasing");
    }
    Matcher matcher(h, p, max_steps);
    matcher.set_blocks(block_info(host, h), block_info(pattern, p), ranks);
    return matcher.run();
}

namespace {

class EndpointMatcher {
public:
    EndpointMatcher(const ESeq& host, const ESeq& pattern, std::uint64_t max_steps)
        : host_(host), max_steps_(max_steps) {
        std::unordered_map<Symbol, std::uint32_t> hid;
        for (const auto& t : host.tokens) hid.try_emplace(t.symbol, static_cast<std::uint32_t>(hid.size()));
        host_sym_.resize(host.size());
        r_pos_.assign(hid.size(), 0);
        host_block_.assign(host.size(), kNoBlock);
        for (std::size_t i = 0; i < host.size(); ++i) {
            host_sym_[i] = hid.at(host.tokens[i].symbol);
            if (host.tokens[i].side == Side::R) r_pos_[host_sym_[i]] = i;
        }
        for (std::size_t b = 0; b < host.blocks.size(); ++b)
            for (std::size_t i = host.blocks[b].start; i < host.blocks[b].end(); ++i) host_block_[i] = b;
        host_symbols_ = hid;

        // Pattern items: tokens and empty-block markers, in order.
        std::unordered_map<Symbol, std::uint32_t> pid;
        const std::size_t nb = pattern.blocks.size();
        pattern_block_count_ = nb;
        std::size_t b = 0;
        std::size_t loose = nb;
        for (std::size_t i = 0; i <= pattern.size(); ++i) {
            for (;;) {
                if (b < nb && pattern.blocks[b].length > 0 && pattern.blocks[b].end() <= i) {
                    ++b;
                } else if (b < nb && pattern.blocks[b].length == 0 && pattern.blocks[b].start == i) {
                    items_.push_back({Item::Gap, 0, b++});
                } else {
                    break;
                }
            }
            if (i == pattern.size()) break;
            const auto& t = pattern.tokens[i];
            auto [it, inserted] = pid.try_emplace(t.symbol, static_cast<std::uint32_t>(pid.size()));
            if (inserted) pattern_symbols_.push_back(t.symbol);
            std::size_t pb = kNoBlock;
            if (t.side == Side::L) {
                const bool in_block = b < nb && pattern.blocks[b].contains(i);
                pb = in_block ? b : loose++;
            }
            items_.push_back({t.side == Side::L ? Item::Left : Item::Right, it->second, pb});
        }
        map_.assign(pid.size(), kNone);
        used_.assign(hid.size(), false);
        positions_.assign(pattern.size(), 0);
        pblock_to_h_.assign(loose, kNoBlock);
        pblock_refs_.assign(loose, 0);
        hblock_used_.assign(host.blocks.size(), false);
    }

    std::optional<PatternWitness> run() {
        if (!dfs(0, 0, 0)) return std::nullopt;
        PatternWitness w;
        std::vector<Symbol> host_of(host_symbols_.size());
        for (const auto& [sym, id] : host_symbols_) host_of[id] = sym;
        for (std::size_t x = 0; x < map_.size(); ++x) w.mapping.emplace_back(pattern_symbols_[x], host_of[map_[x]]);
        w.positions = positions_;
        return w;
    }

private:
    static constexpr std::size_t kNoBlock = std::numeric_limits<std::size_t>::max();

    struct Item {
        enum Kind { Left, Right, Gap } kind;
        std::uint32_t symbol;
        std::size_t block;
    };

    bool dfs(std::size_t item, std::size_t token, std::size_t pos) {
        if (item == items_.size()) return true;
        if (++steps_ > max_steps_)
            throw BudgetExceeded("endpoint pattern search exceeded " + std::to_string(max_steps_) + " steps");
        const Item& it = items_[item];
        if (it.kind == Item::Gap) {
            for (std::size_t b = 0; b < host_.blocks.size(); ++b) {
                const Block& hb = host_.blocks[b];
                if (hb.start < pos || hblock_used_[b]) continue;
                hblock_used_[b] = true;
                const bool ok = dfs(item + 1, token, hb.end());
                hblock_used_[b] = false;
                return ok;
            }
            return false;
        }
        if (it.kind == Item::Right) {
            const std::size_t p = r_pos_[map_[it.symbol]];
            if (p < pos) return false;
            positions_[token] = p;
            return dfs(item + 1, token + 1, p + 1);
        }
        const std::size_t pb = it.block;
        const bool real_block = pb < pattern_block_count_;
        const std::size_t assigned = pblock_to_h_[pb];
        for (std::size_t p = pos; p < host_.size(); ++p) {
            if (assigned != kNoBlock && p >= host_.blocks[assigned].end()) break;
            if (host_.tokens[p].side != Side::L) continue;
            const std::uint32_t h = host_sym_[p];
            if (used_[h]) continue;
            const std::size_t hb = host_block_[p];
            if (assigned != kNoBlock) {
                if (hb != assigned) continue;
            } else if (hb == kNoBlock) {
                if (real_block) continue;
            } else if (hblock_used_[hb]) {
                continue;
            }
            map_[it.symbol] = h;
            used_[h] = true;
            const bool fresh_block = pblock_refs_[pb]++ == 0;
            if (fresh_block && hb != kNoBlock) {
                pblock_to_h_[pb] = hb;
                hblock_used_[hb] = true;
            }
            positions_[token] = p;
            if (dfs(item + 1, token + 1, p + 1)) return true;
            if (--pblock_refs_[pb] == 0 && hb != kNoBlock) {
                pblock_to_h_[pb] = kNoBlock;
                hblock_used_[hb] = false;
            }
            used_[h] = false;
            map_[it.symbol] = kNone;
        }
        return false;
    }

    const ESeq& host_;
    std::uint64_t max_steps_;
    std::uint64_t steps_ = 0;
    std::vector<std::uint32_t> host_sym_;
    std::vector<std::size_t> r_pos_;
    std::vector<std::size_t> host_block_;
    std::unordered_map<Symbol, std::uint32_t> host_symbols_;
    std::vector<Symbol> pattern_symbols_;
    std::vector<Item> items_;
    std::vector<std::uint32_t> map_;
    std::vector<bool> used_;
    std::vector<std::size_t> positions_;
    std::vector<std::size_t> pblock_to_h_;
    std::vector<std::size_t> pblock_refs_;
    std::vector<bool> hblock_used_;
    std::size_t pattern_block_count_ = 0;
};

}  // namespace

std::optional<PatternWitness> contains_endpoint_pattern(const ESeq& host, const ESeq& pattern,
                                                        std::uint64_t max_steps) {
    validate_eseq(host);
    validate_eseq(pattern);
    EndpointMatcher matcher(host, pattern, max_steps);
    return matcher.run();
}

ExResult max_ds_length(std::span<const Seq> forbidden, std::size_t n) {
    if (forbidden.empty()) throw InvalidInput("at least one forbidden pattern is required");
    if (n == 0 || n > 5) throw InvalidInput("exhaustive search supports 1 <= n <= 5, got " + std::to_string(n));
    std::vector<std::vector<std::uint8_t>> pats;
    std::size_t k = std::numeric_limits<std::size_t>::max();
    for (const auto& f : forbidden) {
        const Seq c = canonicalize(f);
        const std::size_t alpha = alphabet_size(c.tokens);
        if (alpha == 0 || alpha > 16 || c.size() > 64) throw InvalidInput("forbidden patterns must be non-empty and small");
        k = std::min(k, alpha);
        pats.emplace_back(c.tokens.begin(), c.tokens.end());
    }
    ExSearch search(std::move(pats), n, k);
    search.run();
    ExResult r;
    r.n = n;
    r.max_length = search.best_length;
    r.witness.tokens.assign(search.best.begin(), search.best.end());
    return r;
}

}  // namespace parazone
