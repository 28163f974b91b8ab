#pragma once

#include "parazone/seq.hpp"

#include <string>
#include <vector>

namespace parazone {

struct InvariantCheck {
    std::string name;
    bool ok = false;
    /// First counterexample, empty when ok.
    std::string detail;
    /// Not run (too large); ok stays false.
    bool skipped = false;
};

/// Above this alphabet size the quadratic abcaccbc scan is skipped.
inline constexpr std::size_t kAbcaccbcMaxAlphabet = 4096;

/// Checks a generated Hart-Sharir sequence: adjacent-distinct, ababa-free,
/// abcaccbc-free, block invariants, every symbol at least twice (unless the
/// sequence is a single token), N-shape
/// after each block, rank >= 2 symbols left-clamped, all symbols but the
/// last right-clamped. Near-linear except the abcaccbc scan, which is
/// skipped above kAbcaccbcMaxAlphabet symbols.
std::vector<InvariantCheck> hs_invariants(const Seq& s);

/// Every check ran and passed.
bool all_ok(const std::vector<InvariantCheck>& checks);

}  // namespace parazone
