#pragma once

#include "parazone/configs.hpp"
#include "parazone/geom.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parazone {

/// Chord per configuration symbol, indexed by dense id.
using Assignment = std::vector<Chord>;

enum class GroupKind { Concave, Wide };

const char* to_string(GroupKind k);

struct GroupResult {
    /// Index into cfg.concave_groups or cfg.wide_groups, depending on kind.
    std::size_t index = 0;
    GroupKind kind = GroupKind::Concave;
    bool satisfied = false;
};

struct Verdict {
    bool order_ok = false;
    /// Position in cfg.eseq of the first endpoint out of order.
    std::optional<std::size_t> order_failure;
    /// Concave groups first, then wide groups. Empty when order_ok is false.
    std::vector<GroupResult> groups;
    /// Index into `groups`.
    std::optional<std::size_t> first_violation;

    bool ok() const { return order_ok && !first_violation; }
};

/// Throws InvalidInput on a size mismatch or repeated endpoint value.
Verdict assign_check(const Config& cfg, const Assignment& a);

/// Assignment with the given endpoint x-values listed in cfg.eseq order.
Assignment assignment_from_positions(const Config& cfg, std::span<const Rat> xs);

nlohmann::json assignment_to_json(const Config& cfg, const Assignment& a);
Assignment assignment_from_json(const Config& cfg, const nlohmann::json& j);

enum class Strategy { Uniform, Geometric, Anneal };

const char* to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

/// One evaluated candidate, handed to the search observer.
struct TrialEvent {
    Strategy strategy = Strategy::Uniform;
    std::uint64_t trial = 0;
    const Assignment* assignment = nullptr;
    /// Same layout as Verdict::groups (the order always holds for candidates).
    std::span<const bool> group_ok;
    std::size_t atoms = 0;
};

struct SearchOptions {
    std::uint64_t budget = 10'000;
    std::uint64_t seed = 0;
    std::vector<Strategy> strategies{Strategy::Uniform, Strategy::Geometric, Strategy::Anneal};
    unsigned jobs = 1;
    /// Called for every candidate; calls are serialized but their order is
    /// unspecified when jobs > 1.
    std::function<void(const TrialEvent&)> observer;
};

struct StrategyStats {
    Strategy strategy = Strategy::Uniform;
    std::uint64_t trials = 0;
    /// Most constraint atoms satisfied at once by one candidate.
    std::size_t best_atoms = 0;
    /// Most whole groups satisfied at once by one candidate.
    std::size_t best_groups = 0;
};

struct SearchReport {
    std::optional<Assignment> witness;
    std::optional<Strategy> found_by;
    /// Trial index within found_by's share of the budget.
    std::uint64_t found_at = 0;
    std::vector<StrategyStats> stats;
    /// Atoms: one per adjacent crossing comparison of a concave group, one
    /// per doubling inequality of a wide group.
    std::size_t total_atoms = 0;
    std::size_t total_groups = 0;

    std::uint64_t trials() const;
    nlohmann::json to_json(const Config& cfg) const;
};

/// Randomized search. Each candidate respects cfg.eseq by construction and
/// counts as one trial; the budget is split evenly across strategies, which
/// run in the listed order until one finds a witness. Deterministic for a
/// given seed regardless of `jobs`.
SearchReport search(const Config& cfg, const SearchOptions& opts);

std::optional<Assignment> search_realization(const Config& cfg, std::uint64_t budget, std::uint64_t seed);

struct DescentStep {
    std::size_t whisker = 0;
    /// 0 = left child, 1 = right child.
    int branch = 0;
};

struct DescentResult {
    std::size_t numeric_group = 0;
    std::vector<DescentStep> path;
};

/// Walks the whisker tree. At whisker (a, b, c) with gaps
/// α2 = L_c - L_b, γ = R_a - L_c, β1 = R_b - R_a, β2 = R_c - R_b:
/// α2 < γ + β1 + β2 makes the block between L_b and L_c wide (left child),
/// otherwise β1 < β2 makes the block between R_a and R_b wide (right child).
/// Throws unless the order holds and every whisker is concave.
DescentResult wide_descent(const Config& cfg, const Assignment& a);

struct Thm31Report {
    std::array<Rat, 4> alpha;
    std::array<Rat, 4> beta;
    Rat p, q, r, s;
    Rat p2, q2, r2, s2;
    /// α1<p, α2>r, α3<s, α4>q, β1>p', β2<r', β3>s', β4<q'.
    std::array<bool, 8> bounds{};
    bool ps_eq_qr = false;
    bool p2s2_eq_q2r2 = false;
    Rat lhs;  // α1 α3 β2 β4
    Rat rhs;  // α2 α4 β1 β3
    bool chain = false;

    bool holds() const;
    nlohmann::json to_json() const;
};

/// For the eleven-segment configuration: needs the order and both whiskers
/// {8,1,2}, {3,4,9} concave; then a..e cannot have decreasing α_i/β_i.
Thm31Report thm31_certificate(const Config& cfg, const Assignment& a);

struct Yf5Report {
    /// L2 - L1 > L5 - L2 and L4 - L3 > L5 - L4 on the numeric group.
    bool gap_first = false;
    bool gap_second = false;
    /// On the Y copy: β1 > β2 and α2 > γ + β1 + β2.
    bool beta_order = false;
    bool alpha_dominates = false;
    /// Third ratio claim for {d, e, f}; must be false.
    bool claim3 = true;
    bool def_concave = false;

    bool holds() const { return gap_first && gap_second && beta_order && alpha_dominates && !claim3 && !def_concave; }
};

/// Y copy `y_index` against numeric group `y_index` (the F_5 it wraps).
/// Throws unless that numeric group has five segments and is wide and concave.
Yf5Report yf5_certificate(const Config& cfg, const Assignment& a, std::size_t y_index = 0);

/// Indices into Verdict::groups (and TrialEvent::group_ok) that a
/// certificate assumes: the two whiskers for THM31, concavity and wideness
/// of numeric group 0 for configurations with a Y copy and an explicit wide
/// group (YF5). Throws for other kinds, X included.
std::vector<std::size_t> certificate_preconditions(const Config& cfg);

/// Copy of cfg whose only constraints are the certificate preconditions.
/// Its realizations are the inputs the certificate must handle; random
/// search over cfg itself meets them too rarely.
Config precondition_config(const Config& cfg);

}  // namespace parazone
