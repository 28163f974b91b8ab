#include "helpers.hpp"

#include "parazone/error.hpp"

#include <doctest.h>

using namespace pzt;

namespace {

Symbol sym(const ParsedSeq& p, const std::string& label) {
    const auto it = std::find(p.labels.begin(), p.labels.end(), label);
    REQUIRE(it != p.labels.end());
    return static_cast<Symbol>(it - p.labels.begin());
}

}  // namespace

TEST_SUITE("seq") {

TEST_CASE("rationals parse to canonical form") {
    CHECK(to_string(Q("6/4")) == "3/2");
    CHECK(to_string(Q("-4/2")) == "-2");
    CHECK(to_string(Q("0/5")) == "0");
    CHECK(Q("1/3") + Q("1/6") == Q("1/2"));
    CHECK_THROWS_AS(Q("1/0"), InvalidInput);
    CHECK_THROWS_AS(Q("x"), InvalidInput);
    CHECK_THROWS_AS(Q(""), InvalidInput);
}

TEST_CASE("make_seq validates blocks") {
    const Seq s = make_seq({1, 2, 1, 2}, {{0, 2}});
    CHECK(canonicalize(s) == S("(12)12"));
    CHECK(make_seq({7}, {}).size() == 1);
    CHECK_THROWS_AS(make_seq({1, 2, 3, 1}, {{0, 2}, {1, 2}}), InvalidInput);
    CHECK_THROWS_AS(make_seq({1, 2, 3}, {{2, 2}}), InvalidInput);
    CHECK_THROWS_AS(make_seq({1, 2, 1, 2}, {{2, 2}}, true), InvalidInput);
}

TEST_CASE("text and JSON formats round-trip") {
    for (const char* text : {"(12)1(34)313424", "(123)21(456)5414525636", "a b a", "(1)(2)12"}) {
        const Seq s = S(text);
        CHECK(S(format_seq(s)) == canonicalize(s));
        CHECK(parse_seq_json(seq_to_json(s)).seq == canonicalize(s));
    }
    CHECK(format_seq(S("x y x y")) == "1212");
    const ESeq e = E("(L:a L:b) () R:a R:b");
    CHECK(parse_eseq(format_eseq(e)).eseq == canonicalize(e));
    CHECK(parse_eseq_json(eseq_to_json(e)).eseq == canonicalize(e));
    CHECK_THROWS_AS(parse_seq("(12"), InvalidInput);
}

TEST_CASE("shuffle reproduces the worked examples") {
    const Seq a = S("(a)(b)(c)babc");
    const Seq b = S("(123)21(456)5414525636");
    CHECK(str(shuffle(a, b)) == str(S("(a1)a(b2)b(c3)cbabc321(d4)d(e5)e(f6)fedef65414525636")));
    CHECK(str(shuffle(S("(a)(b)ab"), S("(12)"))) == str(S("(a1)a(b2)bab2")));
    CHECK_THROWS_AS(shuffle(S("(a)(b)(c)abc"), S("(12)1212")), InvalidInput);
}

TEST_CASE("shuffle arithmetic") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 1 + rng() % 3, m = 1 + rng() % 3, l = 1 + rng() % 3;
        const Seq a = random_block_seq(rng, k, m);
        const Seq b = random_block_seq(rng, l, k);
        const Seq ab = shuffle(a, b);
        CHECK(ab.blocks.size() == k * l);
        for (const auto& blk : ab.blocks) CHECK(blk.length == m + 1);
        const ESeq e = endpoint_shuffle(endpoint_seq(a), endpoint_seq(b));
        CHECK(e.blocks.size() == k * l);
    }
}

TEST_CASE("endpoint_seq") {
    CHECK(str(endpoint_seq(S("abacadcdbd"))) == "L:1 L:2 L:3 R:1 L:4 R:3 R:2 R:4");
    CHECK(str(endpoint_seq(S("abab"))) == "L:1 L:2 R:1 R:2");
    const ParsedSeq u = parse_seq(read_file(data_path("corollary_u.txt")));
    const ESeq eu = endpoint_seq(u.seq);
    CHECK(format_eseq(eu, &u.labels).rfind("L:8 L:1 L:a L:b L:2 R:8", 0) == 0);
    CHECK(format_eseq(eu, &u.labels).size() > 0);
    CHECK(eu.tokens.back() == Endpoint{Side::R, sym(u, "9")});
    CHECK(eu.size() == 2 * alphabet_size(u.seq.tokens));
    CHECK_THROWS_AS(endpoint_seq(S("abcab")), InvalidInput);
    // Blocks move onto the L tokens.
    CHECK(str(endpoint_seq(S("(12)1(34)313424"))) == "(L:1 L:2) (L:3 L:4) R:1 R:3 R:2 R:4");
}

TEST_CASE("endpoint_shuffle reproduces the displays") {
    const ESeq a = E("(L:a) (L:b) (L:c) R:a R:b R:c");
    const ESeq b = E("(L:1 L:2 L:3) (L:4 L:5 L:6) R:1 R:4 R:2 R:5 R:3 R:6");
    const ESeq want = E("(L:a L:1) (L:b L:2) (L:c L:3) R:a R:b R:c (L:d L:4) (L:e L:5) (L:f L:6) R:d R:e R:f "
                        "R:1 R:4 R:2 R:5 R:3 R:6");
    CHECK(str(endpoint_shuffle(a, b)) == str(want));

    const ESeq y = E("L:d L:e () () L:f R:d () () R:e R:f ()");
    const ESeq f5 = E("(L:1 L:2 L:3 L:4 L:5) R:1 R:2 R:3 R:4 R:5");
    CHECK(str(endpoint_shuffle(y, f5)) ==
          str(E("L:d L:e (L:1) (L:2) L:f R:d (L:3) (L:4) R:e R:f (L:5) R:1 R:2 R:3 R:4 R:5")));

    CHECK(str(endpoint_shuffle(E("()"), E("(L:1) R:1"))) == "(L:1) R:1");
    CHECK_THROWS_AS(endpoint_shuffle(a, E("(L:1 L:2) R:1 R:2")), InvalidInput);
}

TEST_CASE("E commutes with shuffling") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng() % 3, m = 1 + rng() % 3, l = 1 + rng() % 3;
        const Seq a = random_block_seq(rng, k, m);
        const Seq b = random_block_seq(rng, l, k);
        CHECK(canonicalize(endpoint_seq(shuffle(a, b))) ==
              canonicalize(endpoint_shuffle(endpoint_seq(a), endpoint_seq(b))));
    }
}

TEST_CASE("rank_of") {
    const ParsedSeq s22 = parse_seq("(12)1(34)313424");
    CHECK(rank_of(s22.seq, sym(s22, "2")) == 2);
    CHECK(rank_of(s22.seq, sym(s22, "3")) == 1);
    const ParsedSeq s13 = parse_seq("(123)21123");
    CHECK(rank_of(s13.seq, sym(s13, "3")) == 3);
    CHECK_THROWS_AS(rank_of(S("(1)21"), 1), InvalidInput);
    CHECK_THROWS_AS(rank_of(S("(1)21"), 9), InvalidInput);
}

TEST_CASE("restrict") {
    const ParsedSeq p = parse_seq("a b c a");
    const std::vector<Symbol> keep{sym(p, "a"), sym(p, "c")};
    const Seq r = restrict(p.seq, keep);
    CHECK(str(r) == "121");
    CHECK(restrict(r, keep) == r);
    CHECK(restrict(p.seq, std::vector<Symbol>{}).empty());

    const Seq s22 = S("(12)1(34)313424");
    const Seq r12 = restrict(s22, [](Symbol x) { return x <= 1; });
    CHECK(str(r12) == "(12)112");
    // Blocks left empty disappear, the rest are clipped.
    CHECK(r12.blocks.size() == 1);
}

TEST_CASE("reversal and canonical renaming") {
    CHECK(str(reversed(S("(12)1(34)313424"))) == str(S("424313(43)1(21)")));
    CHECK(canonicalize(S("9 7 9")) == S("1 2 1"));
}

}  // TEST_SUITE
