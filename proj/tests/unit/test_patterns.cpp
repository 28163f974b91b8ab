#include "helpers.hpp"

#include "parazone/error.hpp"
#include "parazone/hs.hpp"
#include "parazone/patterns.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace pzt;

namespace {

bool literal_subsequence(std::string_view host, std::string_view pat) {
    std::size_t i = 0;
    for (char c : host)
        if (i < pat.size() && pat[i] == c) ++i;
    return i == pat.size();
}

// Naive oracle: every position subset, compared after canonical renaming.
bool naive_contains(const std::vector<Symbol>& host, const std::vector<Symbol>& pat) {
    const std::size_t n = host.size(), k = pat.size();
    if (k > n) return false;
    const Seq want = canonicalize(make_seq(pat, {}));
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        std::vector<Symbol> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) sub.push_back(host[i]);
        if (canonicalize(make_seq(sub, {})) == want) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

std::vector<Symbol> random_tokens(std::mt19937_64& rng, std::size_t len, Symbol alphabet) {
    std::vector<Symbol> t;
    while (t.size() < len) {
        const Symbol s = rng() % alphabet;
        if (t.empty() || t.back() != s) t.push_back(s);
    }
    return t;
}

void check_witness(const std::vector<Symbol>& host, const std::vector<Symbol>& pat, const PatternWitness& w) {
    REQUIRE(w.positions.size() == pat.size());
    for (std::size_t i = 1; i < w.positions.size(); ++i) CHECK(w.positions[i - 1] < w.positions[i]);
    std::map<Symbol, Symbol> m(w.mapping.begin(), w.mapping.end());
    std::set<Symbol> images;
    for (const auto& [p, h] : w.mapping) images.insert(h);
    CHECK(images.size() == m.size());
    for (std::size_t i = 0; i < pat.size(); ++i) CHECK(host[w.positions[i]] == m.at(pat[i]));
}

}  // namespace

TEST_SUITE("patterns") {

TEST_CASE("alternations") {
    const Seq s = S("ababa");
    CHECK(has_alternation(s.tokens, 0, 1, 5));
    CHECK(has_alternation(s.tokens, 1, 0, 4));
    // Either symbol may start.
    CHECK(has_alternation(s.tokens, 1, 0, 5));
    CHECK_FALSE(has_alternation(S("abab").tokens, 0, 1, 5));
    const Seq s22 = hart_sharir({2, 2});
    for (Symbol a = 0; a < 4; ++a)
        for (Symbol b = 0; b < 4; ++b)
            if (a != b) CHECK_FALSE(has_alternation(canonicalize(s22).tokens, a, b, 5));
    CHECK(has_alternation(S("abcacbc").tokens, 0, 1, 4));
    CHECK_THROWS_AS(has_alternation(s.tokens, 0, 0, 3), InvalidInput);
}

TEST_CASE("order-3 DS") {
    CHECK(is_ds_order3(hart_sharir({3, 2}).tokens));
    CHECK_FALSE(is_ds_order3(S("aa").tokens));
    CHECK_FALSE(is_ds_order3(S("abcacbcab").tokens));
    const auto w = find_ababa(S("xaybxaybxa").tokens);
    REQUIRE(w);
    CHECK(w->positions[4] < 10);
}

TEST_CASE("find_ababa agrees with pairwise scans") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const auto t = random_tokens(rng, 4 + rng() % 12, 2 + rng() % 4);
        bool naive = false;
        for (Symbol a = 0; a < 6; ++a)
            for (Symbol b = 0; b < 6; ++b)
                if (a != b) naive |= has_alternation(t, a, b, 5);
        const auto w = find_ababa(t);
        CHECK(w.has_value() == naive);
        if (w) {
            const auto& p = w->positions;
            CHECK((t[p[0]] == w->a && t[p[1]] == w->b && t[p[2]] == w->a && t[p[3]] == w->b && t[p[4]] == w->a));
        }
    }
}

TEST_CASE("contains_isomorphic examples") {
    const Seq s32 = hart_sharir({3, 2});
    CHECK(contains_isomorphic(s32.tokens, reversed(S("abcaccbc")).tokens));
    CHECK_FALSE(contains_isomorphic(S("abab").tokens, S("ababa").tokens));
    const Seq u = S("81ab12181cd12dedcbab34bc49434de49");
    CHECK(contains_isomorphic(u.tokens, S("abcaccbc").tokens));
    CHECK(literal_subsequence("81ab12181cd12dedcbab34bc49434de49", "be4b44e4"));
    CHECK_THROWS_AS(contains_isomorphic(hart_sharir({3, 4}).tokens, S("abcdefghabcdefgh").tokens, 10), BudgetExceeded);
}

TEST_CASE("contains_isomorphic agrees with the naive oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto host = random_tokens(rng, 3 + rng() % 7, 2 + rng() % 3);
        const auto pat = random_tokens(rng, 2 + rng() % 3, 2 + rng() % 2);
        const auto w = contains_isomorphic(host, pat);
        CHECK(w.has_value() == naive_contains(host, pat));
        if (w) check_witness(host, pat, *w);
    }
}

TEST_CASE("abcaccbc detector agrees with the generic matcher") {
    std::mt19937_64 rng(9);
    const auto pat = S("abcaccbc").tokens;
    int hits = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto host = random_tokens(rng, 8 + rng() % 10, 3 + rng() % 2);
        const auto w = find_abcaccbc(host);
        CHECK(w.has_value() == contains_isomorphic(host, pat).has_value());
        if (w) {
            ++hits;
            check_witness(host, pat, *w);
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("containment is monotone") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto host = random_tokens(rng, 12, 4);
        std::vector<Symbol> sub;
        for (auto t : host)
            if (rng() % 3) sub.push_back(t);
        const auto pat = random_tokens(rng, 4, 3);
        if (contains_isomorphic(sub, pat)) CHECK(contains_isomorphic(host, pat));
    }
}

TEST_CASE("sparsity") {
    CHECK(is_k_sparse(S("abcabc").tokens, 3));
    CHECK_FALSE(is_k_sparse(S("abab").tokens, 3));
    CHECK(is_k_sparse(hart_sharir({2, 3}).tokens, 2));
    CHECK(is_k_sparse(S("a").tokens, 5));
    CHECK_THROWS_AS(is_k_sparse(S("ab").tokens, 0), InvalidInput);
}

TEST_CASE("clamping") {
    const ParsedSeq u = parse_seq("81ab12181cd12dedcbab34bc49434de49");
    for (std::size_t i = 0; i < u.labels.size(); ++i) {
        CAPTURE(u.labels[i]);
        CHECK(is_left_clamped(u.seq.tokens, i) == (u.labels[i] != "8"));
        CHECK(is_right_clamped(u.seq.tokens, i) == (u.labels[i] != "9"));
    }
    const Seq s22 = canonicalize(hart_sharir({2, 2}));
    CHECK(is_left_clamped(s22.tokens, 1));
    CHECK_THROWS_AS(is_left_clamped(s22.tokens, 42), InvalidInput);
}

TEST_CASE("clamping holds on generated sequences") {
    for (std::uint64_t k = 1; k <= 3; ++k)
        for (std::uint64_t m = 2; m <= 5; ++m) {
            const Seq s = hart_sharir({k, m});
            const Symbol last = s.tokens.back();
            for (const auto& b : s.blocks)
                for (std::size_t p = b.start; p < b.end(); ++p) {
                    if (p > b.start) CHECK(is_left_clamped(s.tokens, s.tokens[p]));
                    if (s.tokens[p] != last) CHECK(is_right_clamped(s.tokens, s.tokens[p]));
                }
        }
}

TEST_CASE("N shapes") {
    CHECK_FALSE(first_block_without_nshape(hart_sharir({2, 4})));
    const Seq u = S("81ab12181cd12dedcbab34bc49434de49");
    const ParsedSeq pu = parse_seq("81ab12181cd12dedcbab34bc49434de49");
    const auto id = [&](const char* l) {
        return static_cast<Symbol>(std::find(pu.labels.begin(), pu.labels.end(), l) - pu.labels.begin());
    };
    const std::vector<Symbol> g{id("8"), id("1"), id("2")};
    const auto w = find_nshape(u.tokens, g);
    REQUIRE(w);
    CHECK(w->size() == 7);
    CHECK_FALSE(find_nshape(S("abba").tokens, std::vector<Symbol>{0, 1}));
}

TEST_CASE("structural containment") {
    const Seq s22 = hart_sharir({2, 2});
    const Seq s23 = hart_sharir({2, 3});
    const auto w = structurally_contains(s23, s22);
    REQUIRE(w);
    check_witness(s23.tokens, s22.tokens, *w);
    CHECK(contains_isomorphic(s23.tokens, s22.tokens));
    const auto id = structurally_contains(s22, s22);
    REQUIRE(id);
    for (const auto& [p, h] : id->mapping) CHECK(p == h);
    CHECK_FALSE(structurally_contains(hart_sharir({1, 3}), s22));
    // Plain containment alone ignores blocks.
    CHECK(contains_isomorphic(S("1 2 1 3 4 3 1 3 4 2 4").tokens, s22.tokens));
    CHECK_FALSE(structurally_contains(S("(1)(2)1(3)(4)313424"), s22));
}

TEST_CASE("endpoint pattern containment") {
    for (std::uint64_t m = 1; m <= 4; ++m) {
        std::string pat = "(";
        for (std::uint64_t i = 1; i <= m; ++i) pat += (i > 1 ? " L:" : "L:") + std::to_string(i);
        pat += ") ()";
        for (std::uint64_t i = 1; i <= m; ++i) pat += " R:" + std::to_string(i);
        CAPTURE(pat);
        CHECK(contains_endpoint_pattern(endpoint_seq(hart_sharir({2, m})), E(pat)));
        if (m > 1) CHECK_FALSE(contains_endpoint_pattern(endpoint_seq(hart_sharir({1, m})), E(pat)));
    }
}

TEST_CASE("extremal oracle") {
    CHECK(max_ds_length(std::vector<Seq>{S("aba")}, 3).max_length == 3);
    CHECK(max_ds_length(std::vector<Seq>{S("abab")}, 3).max_length == 5);
    const ExResult r = max_ds_length(std::vector<Seq>{S("ababa")}, 2);
    CHECK(r.max_length == 4);
    CHECK(str(r.witness) == "1212");
    CHECK_THROWS_AS(max_ds_length(std::vector<Seq>{S("abab")}, 6), InvalidInput);
    CHECK_THROWS_AS(max_ds_length(std::vector<Seq>{}, 3), InvalidInput);
}

}  // TEST_SUITE
