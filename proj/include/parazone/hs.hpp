#pragma once

#include "parazone/seq.hpp"

#include <cstdint>
#include <string>

namespace parazone {

struct HsParams {
    std::uint64_t k = 1;
    std::uint64_t m = 1;
};

/// Sizes of S_k(m) derived from the shuffle arithmetic. Counts saturate at
/// UINT64_MAX; `exact` is false when that happened, in which case the
/// stored counts are lower bounds.
struct HsSizeEstimate {
    std::uint64_t length = 0;
    std::uint64_t block_count = 0;
    std::uint64_t block_length = 0;
    std::uint64_t distinct_symbols = 0;
    bool exact = true;
    bool feasible = true;

    std::string describe() const;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

HsSizeEstimate hs_size(HsParams p, std::uint64_t budget = kDefaultBudget);

/// Materializes S_k(m) with canonical symbol ids (first-occurrence order).
/// Throws BudgetExceeded when hs_size reports the length over budget.
Seq hart_sharir(HsParams p, std::uint64_t budget = kDefaultBudget);

}  // namespace parazone
