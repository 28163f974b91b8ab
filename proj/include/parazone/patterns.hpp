#pragma once

#include "parazone/seq.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace parazone {

/// An occurrence of a pattern: pattern symbol -> host symbol (injective),
/// plus the increasing host positions spelling the pattern.
struct PatternWitness {
    std::vector<std::pair<Symbol, Symbol>> mapping;
    std::vector<std::size_t> positions;
};

struct AlternationWitness {
    Symbol a = 0;
    Symbol b = 0;
    std::array<std::size_t, 5> positions{};
};

inline constexpr std::uint64_t kDefaultSearchSteps = 50'000'000;

/// True iff `s` contains an a/b alternation of length `len` starting with
/// either symbol.
bool has_alternation(std::span<const Symbol> s, Symbol a, Symbol b, std::size_t len);

/// Some ababa occurrence, found in O(n log n).
std::optional<AlternationWitness> find_ababa(std::span<const Symbol> s);

std::optional<std::size_t> find_adjacent_repeat(std::span<const Symbol> s);

/// Some occurrence of a pattern isomorphic to abcaccbc, in O(A^2 (A + n))
/// for alphabet size A. Scales to sequences the generic matcher cannot.
std::optional<PatternWitness> find_abcaccbc(std::span<const Symbol> s);

bool is_ds_order3(std::span<const Symbol> s);

/// Every window of k adjacent tokens is pairwise distinct.
bool is_k_sparse(std::span<const Symbol> s, std::size_t k);

bool is_left_clamped(std::span<const Symbol> u, Symbol a);
bool is_right_clamped(std::span<const Symbol> u, Symbol a);

/// Every block (x1..xm) is immediately followed by x_{m-1}..x_1 and later
/// by the subsequence x_2..x_m. Returns the index of the first failing block.
std::optional<std::size_t> first_block_without_nshape(const Seq& s);

/// Greedy match of g1..gm g_{m-1}..g1 g2..gm.
std::optional<std::vector<std::size_t>> find_nshape(std::span<const Symbol> u, std::span<const Symbol> group);

/// Occurrence of some injective renaming of `pattern` as a subsequence.
/// Throws BudgetExceeded after `max_steps` search nodes.
std::optional<PatternWitness> contains_isomorphic(std::span<const Symbol> host, std::span<const Symbol> pattern,
                                                  std::uint64_t max_steps = kDefaultSearchSteps);

/// Structural containment: an isomorphic occurrence in which two pattern
/// symbols have their first occurrences in the same pattern block iff the
/// host symbols have theirs in the same host block. With `ranks`, a pattern
/// symbol of rank j must map to a host symbol of rank ranks[j-1].
std::optional<PatternWitness> structurally_contains(const Seq& host, const Seq& pattern,
                                                    std::span<const std::size_t> ranks = {},
                                                    std::uint64_t max_steps = kDefaultSearchSteps);

/// Endpoint-sequence containment preserving blocks. Tokens of one pattern
/// block map into one host block (distinct blocks to distinct blocks); an
/// empty pattern block maps to an unused host block lying strictly between
/// the neighbouring matched tokens.
std::optional<PatternWitness> contains_endpoint_pattern(const ESeq& host, const ESeq& pattern,
                                                        std::uint64_t max_steps = kDefaultSearchSteps);

struct ExResult {
    std::size_t n = 0;
    std::size_t max_length = 0;
    Seq witness;
};

/// Longest k-sparse sequence over at most n symbols avoiding every pattern
/// in `forbidden` (k = smallest pattern alphabet). Exhaustive; n <= 5.
ExResult max_ds_length(std::span<const Seq> forbidden, std::size_t n);

}  // namespace parazone
