#include "helpers.hpp"

#include "parazone/error.hpp"
#include "parazone/hs.hpp"
#include "parazone/invariants.hpp"
#include "parazone/patterns.hpp"

#include <doctest.h>

using namespace pzt;

TEST_SUITE("hs") {

TEST_CASE("printed listings") {
    const std::vector<std::tuple<int, int, const char*>> listing{
        {1, 2, "(12)12"},
        {2, 1, "(1)(2)12"},
        {2, 2, "(12)1(34)313424"},
        {2, 3, "(123)21(456)5414525636"},
        {2, 4, "(1234)321(5678)76515626737848"},
        {3, 1, "(1)(2)1(3)(4)313424"},
        {3, 2, "(12)1(34)31(56)5(78)75157378642(9A)9(BC)B9(DE)D(FG)FD9DFBFGECA2AC4CE6EG8G"},
        {4, 1, "(1)(2)1(3)(4)31(5)(6)5(7)(8)75157378642(9)(A)9(B)(C)B9(D)(E)D(F)(G)FD9DFBFGECA2AC4CE6EG8G"},
    };
    for (const auto& [k, m, text] : listing) {
        CAPTURE(k);
        CAPTURE(m);
        CHECK(hart_sharir({std::uint64_t(k), std::uint64_t(m)}) == S(text));
    }
}

TEST_CASE("S_1(m) is the N shape") {
    CHECK(str(hart_sharir({1, 1})) == "(1)");
    CHECK(str(hart_sharir({1, 4})) == "(1234)321234");
}

TEST_CASE("k = 2 shortcut agrees with the recursion") {
    Seq prev = hart_sharir({2, 1});
    for (std::uint64_t m = 2; m <= 80; ++m) {
        CAPTURE(m);
        const Seq step = canonicalize(shuffle(prev, hart_sharir({1, 2})));
        prev = hart_sharir({2, m});
        CHECK(prev == step);
    }
    // k = 3 goes through the chain and leans on the shortcut at every step.
    Seq s3 = hart_sharir({3, 1});
    for (std::uint64_t m = 2; m <= 8; ++m) {
        s3 = canonicalize(shuffle(s3, hart_sharir({2, s3.blocks.size()})));
        CHECK(s3 == hart_sharir({3, m}));
    }
}

TEST_CASE("hs_size matches materialized sequences") {
    for (std::uint64_t k = 1; k <= 3; ++k)
        for (std::uint64_t m = 1; m <= 6; ++m) {
            const auto e = hs_size({k, m});
            const Seq s = hart_sharir({k, m});
            CAPTURE(k);
            CAPTURE(m);
            CHECK(e.exact);
            CHECK(e.feasible);
            CHECK(e.length == s.size());
            CHECK(e.block_count == s.blocks.size());
            CHECK(e.block_length == m);
            CHECK(e.distinct_symbols == alphabet_size(s.tokens));
        }
    for (std::uint64_t m = 1; m <= 6; ++m) {
        CHECK(hs_size({2, m}).length == 7 * m - 3);
        CHECK(hs_size({2, m}).block_count == 2);
    }
    CHECK(hs_size({2, 1}).length == 4);
    CHECK(hs_size({4, 2}).length == 18'874'369);
}

TEST_CASE("budget and parameter errors") {
    const auto e = hs_size({7, 2});
    CHECK_FALSE(e.feasible);
    CHECK_FALSE(e.exact);
    CHECK_THROWS_AS(hart_sharir({7, 2}), BudgetExceeded);
    CHECK_THROWS_AS(hart_sharir({4, 2}, 1000), BudgetExceeded);
    CHECK_THROWS_AS(hart_sharir({0, 2}), InvalidInput);
    CHECK_THROWS_AS(hart_sharir({2, 0}), InvalidInput);
}

TEST_CASE("generation is deterministic") {
    CHECK(hart_sharir({3, 3}) == hart_sharir({3, 3}));
}

TEST_CASE("invariant suite holds for small k, m") {
    for (std::uint64_t k = 1; k <= 3; ++k)
        for (std::uint64_t m = 1; m <= 4; ++m) {
            CAPTURE(k);
            CAPTURE(m);
            const auto checks = hs_invariants(hart_sharir({k, m}));
            for (const auto& c : checks) {
                CAPTURE(c.name);
                CAPTURE(c.detail);
                CHECK(c.ok);
            }
        }
}

TEST_CASE("invariant suite catches broken sequences") {
    const auto failed = [](const Seq& s) {
        std::vector<std::string> out;
        for (const auto& c : hs_invariants(s))
            if (!c.ok) out.push_back(c.name);
        return out;
    };
    const auto has = [](const std::vector<std::string>& v, const char* name) {
        return std::find(v.begin(), v.end(), name) != v.end();
    };
    CHECK(has(failed(S("(12)1(34)3134244")), "adjacent-distinct"));
    CHECK(has(failed(S("(12)1212")), "ababa-free"));
    CHECK(has(failed(S("(12)12(3)3")), "blocks"));
    CHECK(has(failed(S("(12)1(34)3132")), "two-occurrences"));
    CHECK(has(failed(S("(12)212")), "n-shape"));
    // Rank 2 symbol 2 is not left-clamped without a second 1 followed by 2.
    CHECK(has(failed(S("(12)1")), "left-clamped"));
}

TEST_CASE("reversed abcaccbc already appears in S_3(2)") {
    const Seq s32 = hart_sharir({3, 2});
    CHECK_FALSE(find_abcaccbc(s32.tokens));
    CHECK(contains_isomorphic(s32.tokens, reversed(S("abcaccbc")).tokens));
}

}  // TEST_SUITE
