#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace parazone {

/// Opaque symbol identifier. Generated sequences use dense ids 0..n-1
/// assigned in order of first occurrence.
using Symbol = std::uint64_t;

/// Half-open range [start, start + length) of token indices. Empty blocks
/// are meaningful for endpoint sequences (they mark insertion slots).
struct Block {
    std::size_t start = 0;
    std::size_t length = 0;

    std::size_t end() const { return start + length; }
    bool contains(std::size_t index) const { return index >= start && index < end(); }

    friend bool operator==(const Block&, const Block&) = default;
};

/// A symbol sequence with designated special blocks.
struct Seq {
    std::vector<Symbol> tokens;
    std::vector<Block> blocks;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }

    friend bool operator==(const Seq&, const Seq&) = default;
};

enum class Side : std::uint8_t { L, R };

/// One endpoint token L:a or R:a.
struct Endpoint {
    Side side = Side::L;
    Symbol symbol = 0;

    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

/// An endpoint sequence. Every symbol contributes exactly one L and one R
/// (L first); blocks hold only L tokens.
struct ESeq {
    std::vector<Endpoint> tokens;
    std::vector<Block> blocks;

    std::size_t size() const { return tokens.size(); }

    friend bool operator==(const ESeq&, const ESeq&) = default;
};

/// Outcome of checking the block invariants of Hart-Sharir sequences.
struct HsBlockReport {
    bool uniform_length = true;
    bool first_occurrences_in_blocks = true;
    bool blocks_hold_only_first_occurrences = true;
    std::size_t block_length = 0;

    bool ok() const {
        return uniform_length && first_occurrences_in_blocks && blocks_hold_only_first_occurrences;
    }
};

/// Validates block ranges (in bounds, disjoint, increasing). With
/// `require_hs` the Hart-Sharir block invariants must also hold.
Seq make_seq(std::vector<Symbol> tokens, std::vector<Block> blocks, bool require_hs = false);

void validate_blocks(std::span<const Block> blocks, std::size_t token_count);

HsBlockReport check_hs_blocks(const Seq& s);

/// Each symbol has one L and one R token (L first); blocks hold only L tokens.
void validate_eseq(const ESeq& e);

/// Maps symbols to 0..n-1 in order of first occurrence.
Seq canonicalize(const Seq& s);
ESeq canonicalize(const ESeq& e);

/// Number of distinct symbols.
std::size_t alphabet_size(std::span<const Symbol> tokens);

/// Fresh-symbol scheme used by the shuffles: copy `c` of symbol `a` becomes
/// base + c * stride + a. The second operand keeps its own symbols.
struct FreshNaming {
    Symbol base = 0;
    Symbol stride = 0;

    Symbol operator()(std::size_t copy, Symbol a) const {
        return base + static_cast<Symbol>(copy) * stride + a;
    }
};

template <class S>
struct Shuffled {
    S seq;
    FreshNaming naming;
};

/// Hart-Sharir shuffle A • B. A must have k >= 1 blocks of a uniform
/// length m >= 1 and B blocks of length exactly k.
Seq shuffle(const Seq& a, const Seq& b);
Shuffled<Seq> shuffle_with_naming(const Seq& a, const Seq& b);

/// Endpoint shuffle A ∘ B (no duplications). Empty blocks are allowed.
ESeq endpoint_shuffle(const ESeq& a, const ESeq& b);
Shuffled<ESeq> endpoint_shuffle_with_naming(const ESeq& a, const ESeq& b);

/// E(u): first occurrence -> L, last occurrence -> R, middle occurrences
/// dropped. Blocks of u are carried over to the L tokens they contain.
ESeq endpoint_seq(const Seq& u);

/// 1-based position of the first occurrence of `a` inside its block.
std::size_t rank_of(const Seq& s, Symbol a);

/// Keeps tokens satisfying `keep`; blocks are clipped, and blocks left
/// empty are dropped.
Seq restrict(const Seq& s, const std::function<bool(Symbol)>& keep);
Seq restrict(const Seq& s, std::span<const Symbol> keep);

Seq reversed(const Seq& s);

/// Dense view of a sequence: symbols relabelled 0..n-1 by first
/// occurrence with per-symbol occurrence lists.
struct DenseSeq {
    std::vector<std::uint32_t> tokens;
    std::vector<Symbol> symbol_of;
    std::vector<std::vector<std::uint32_t>> positions;

    explicit DenseSeq(std::span<const Symbol> source);

    std::size_t size() const { return tokens.size(); }
    std::size_t alphabet() const { return symbol_of.size(); }
    std::uint32_t first(std::uint32_t sym) const { return positions[sym].front(); }
    std::uint32_t last(std::uint32_t sym) const { return positions[sym].back(); }
    /// Dense id of `s`, or alphabet() when absent.
    std::uint32_t find(Symbol s) const;

private:
    std::unordered_map<Symbol, std::uint32_t> index_;
};

}  // namespace parazone
