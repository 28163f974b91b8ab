#include "parazone/hs.hpp"

#include "parazone/error.hpp"

#include <limits>
#include <map>
#include <memory>
#include <utility>

namespace parazone {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSat / b ? kSat : a * b;
}

void check_params(HsParams p) {
    if (p.k < 1 || p.m < 1) throw InvalidInput("Hart-Sharir parameters need k >= 1 and m >= 1");
}

struct Size {
    std::uint64_t length = 0;
    std::uint64_t blocks = 0;
    std::uint64_t alpha = 0;
    bool exact = true;
};

Size saturated() { return {kSat, kSat, kSat, false}; }

class SizeTable {
public:
    Size get(std::uint64_t k, std::uint64_t m) {
        if (k == 1) {
            const std::uint64_t len = sat_mul(3, m);
            return len == kSat ? saturated() : Size{len - 2, 1, m, true};
        }
        if (k == 2) {
            const std::uint64_t len = sat_mul(7, m);
            return len == kSat ? saturated() : Size{len - 3, 2, 2 * m, true};
        }
        if (auto it = memo_.find({k, m}); it != memo_.end()) return it->second;

        // Iterate upward in m from the largest memoized entry; lengths grow
        // at least geometrically for k >= 3, so saturation cuts huge second
        // arguments short.
        std::uint64_t start = 1;
        Size cur;
        if (auto it = memo_.upper_bound({k, m}); it != memo_.begin()) {
            --it;
            if (it->first.first == k) {
                start = it->first.second + 1;
                cur = it->second;
            }
        }
        if (start == 1) {
            const Size prev = get(k - 1, 2);
            cur = {prev.length, sat_mul(2, prev.blocks), prev.alpha, prev.exact};
            memo_[{k, 1}] = cur;
            start = 2;
        }
        for (std::uint64_t mm = start; mm <= m; ++mm) {
            if (!cur.exact) return saturated();
            const Size b = get(k - 1, cur.blocks);
            if (!b.exact) return saturated();
            const std::uint64_t per_copy = sat_add(sat_add(cur.length, cur.blocks), 1);
            Size next{sat_add(b.length, sat_mul(b.blocks, per_copy)), sat_mul(cur.blocks, b.blocks),
                      sat_add(b.alpha, sat_mul(b.blocks, cur.alpha)), true};
            next.exact = next.length != kSat && next.blocks != kSat && next.alpha != kSat;
            if (!next.exact) return saturated();
            memo_[{k, mm}] = next;
            cur = next;
        }
        return cur;
    }

private:
    std::map<std::pair<std::uint64_t, std::uint64_t>, Size> memo_;
};

// S_k(m) for increasing m, holding only the current term. Each step asks the
// level below for a larger m than before, so every level advances monotonically
// and nothing is rebuilt. A memo of whole chains does not fit for S_4(2).
class Chain {
public:
    explicit Chain(std::uint64_t k) : k_(k) {}

    const Seq& advance_to(std::uint64_t m) {
        if (k_ == 1) {
            cur_ = Seq{};
            for (std::uint64_t i = 0; i < m; ++i) cur_.tokens.push_back(i);
            for (std::uint64_t i = m - 1; i-- > 0;) cur_.tokens.push_back(i);
            for (std::uint64_t i = 1; i < m; ++i) cur_.tokens.push_back(i);
            cur_.blocks = {{0, m}};
            m_ = m;
            return cur_;
        }
        if (k_ == 2) {
            // Closed form; stepping the k = 2 chain one m at a time is quadratic.
            // (A)A'(B)B' then i b_i b_{i+1} for each i, with A' = m-1..1.
            cur_ = Seq{};
            auto& t = cur_.tokens;
            for (int half = 0; half < 2; ++half) {
                const Symbol o = half * m;
                for (std::uint64_t i = 0; i < m; ++i) t.push_back(o + i);
                for (std::uint64_t i = m - 1; i-- > 0;) t.push_back(o + i);
            }
            for (std::uint64_t i = 0; i < m; ++i) {
                t.push_back(i);
                t.push_back(m + i);
                if (i + 1 < m) t.push_back(m + i + 1);
            }
            cur_.blocks = {{0, m}, {2 * m - 1, m}};
            m_ = m;
            return cur_;
        }
        if (!lower_) lower_ = std::make_unique<Chain>(k_ - 1);
        if (m_ == 0) {
            cur_ = lower_->advance_to(2);
            std::vector<Block> split;
            split.reserve(2 * cur_.blocks.size());
            for (const auto& b : cur_.blocks) {
                split.push_back({b.start, 1});
                split.push_back({b.start + 1, 1});
            }
            cur_.blocks = std::move(split);
            m_ = 1;
        }
        while (m_ < m) {
            cur_ = canonicalize(shuffle(cur_, lower_->advance_to(cur_.blocks.size())));
            ++m_;
        }
        return cur_;
    }

private:
    std::uint64_t k_;
    std::uint64_t m_ = 0;
    Seq cur_;
    std::unique_ptr<Chain> lower_;
};

}  // namespace

std::string HsSizeEstimate::describe() const {
    const std::string rel = exact ? "" : ">= ";
    return "length " + rel + std::to_string(length) + ", blocks " + rel + std::to_string(block_count) +
           " of length " + std::to_string(block_length) + ", symbols " + rel +
           std::to_string(distinct_symbols);
}

HsSizeEstimate hs_size(HsParams p, std::uint64_t budget) {
    check_params(p);
    SizeTable table;
    const Size s = table.get(p.k, p.m);
    HsSizeEstimate e;
    e.length = s.length;
    e.block_count = s.blocks;
    e.block_length = p.m;
    e.distinct_symbols = s.alpha;
    e.exact = s.exact;
    e.feasible = s.exact && s.length <= budget;
    return e;
}

Seq hart_sharir(HsParams p, std::uint64_t budget) {
    const HsSizeEstimate e = hs_size(p, budget);
    if (!e.feasible)
        throw BudgetExceeded("S_" + std::to_string(p.k) + "(" + std::to_string(p.m) + ") exceeds the budget of " +
                             std::to_string(budget) + " tokens: " + e.describe());
    return Chain(p.k).advance_to(p.m);
}

}  // namespace parazone
