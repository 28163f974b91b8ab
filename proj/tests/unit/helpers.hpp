#pragma once

#include "parazone/geom.hpp"
#include "parazone/patterns.hpp"
#include "parazone/seq.hpp"
#include "parazone/seq_io.hpp"
#include "parazone/zone.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace pzt {

using namespace parazone;

inline Seq S(std::string_view text) { return parse_seq(text).seq; }
inline ESeq E(std::string_view text) { return parse_eseq(text).eseq; }
inline std::string str(const Seq& s) { return format_seq(s); }
inline std::string str(const ESeq& e) { return format_eseq(e); }
inline Rat Q(std::string_view t) { return parse_rat(t); }
inline Chord C(std::string_view p, std::string_view q) { return chord_between(Q(p), Q(q)); }

inline std::string data_path(const std::string& name) { return std::string(PARAZONE_TEST_DATA) + "/" + name; }

/// Distinct rationals with small denominators, sorted ascending.
inline std::vector<Rat> distinct_sorted(std::mt19937_64& rng, std::size_t count, long span = 1000) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, 7);
    std::vector<Rat> out;
    while (out.size() < count) {
        Rat r(num(rng), den(rng));
        r.canonicalize();
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Chords with 2n distinct random endpoints; general position not enforced.
inline std::vector<Chord> random_chords(std::mt19937_64& rng, std::size_t n, long span = 1000) {
    std::uniform_int_distribution<long> coord(-span, span);
    std::vector<Rat> xs;
    while (xs.size() < 2 * n) {
        Rat r(coord(rng));
        if (std::find(xs.begin(), xs.end(), r) == xs.end()) xs.push_back(r);
    }
    std::vector<Chord> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(chord_between(xs[2 * i], xs[2 * i + 1]));
    return out;
}

/// Random sequence with `blocks` special blocks of uniform length `len`
/// holding first occurrences; every symbol occurs at least twice.
inline Seq random_block_seq(std::mt19937_64& rng, std::size_t blocks, std::size_t len) {
    std::vector<Symbol> tokens;
    std::vector<Block> bs;
    std::vector<Symbol> seen;
    Symbol next = 0;
    std::uniform_int_distribution<int> filler(0, 3);
    for (std::size_t b = 0; b < blocks; ++b) {
        bs.push_back({tokens.size(), len});
        for (std::size_t i = 0; i < len; ++i) {
            tokens.push_back(next);
            seen.push_back(next++);
        }
        for (int f = filler(rng); f > 0; --f)
            tokens.push_back(seen[std::uniform_int_distribution<std::size_t>(0, seen.size() - 1)(rng)]);
    }
    std::shuffle(seen.begin(), seen.end(), rng);
    tokens.insert(tokens.end(), seen.begin(), seen.end());
    return make_seq(std::move(tokens), std::move(bs));
}

// ---- zone transcript properties ----

inline bool literal_subsequence(const std::vector<Symbol>& host, const std::vector<Symbol>& pat) {
    std::size_t i = 0;
    for (Symbol s : host)
        if (i < pat.size() && pat[i] == s) ++i;
    return i == pat.size();
}

/// Endpoint tokens of the chords sorted by x.
inline std::vector<Endpoint> endpoint_order(const std::vector<Chord>& cs) {
    std::vector<std::pair<Rat, Endpoint>> xs;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        xs.push_back({cs[i].p, {Side::L, static_cast<Symbol>(i)}});
        xs.push_back({cs[i].q, {Side::R, static_cast<Symbol>(i)}});
    }
    std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Endpoint> out;
    for (const auto& [x, e] : xs) out.push_back(e);
    return out;
}

/// No adjacent repeats and no abab.
inline bool ds_order2(const std::vector<Symbol>& t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return false;
    return !contains_isomorphic(t, parse_seq("abab").seq.tokens);
}

/// S' restricted to the six tokens of chords a, b (a has the smaller left
/// endpoint), spelled A a X for a', a, a'' and B b Y for b', b, b''.
inline std::string pair_word(const Seq& sprime, Symbol a, Symbol b) {
    static const char* const spell[2] = {"AaX", "BbY"};
    std::string out;
    for (Symbol t : sprime.tokens) {
        const Symbol c = t / 3;
        if (c == a) out += spell[0][t % 3];
        else if (c == b) out += spell[1][t % 3];
    }
    return out;
}

/// The two admissible shapes of pair_word for crossing chords.
inline constexpr const char* kPairForms = "A*a*B*b*a*X*b*Y*X*|B*A*a*B*b*a*X*b*Y*";

/// Random instance in general position with a connected intersection graph.
inline std::vector<Chord> random_instance(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        auto cs = random_chords(rng, n, 60);
        if (validate_general_position(cs).ok()) return cs;
    }
}

}  // namespace pzt
