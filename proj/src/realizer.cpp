#include "parazone/realizer.hpp"

#include "parazone/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <random>
#include <thread>

namespace parazone {

namespace {

std::vector<Chord> group_chords(const Assignment& a, const std::vector<Symbol>& group) {
    std::vector<Chord> out;
    out.reserve(group.size());
    for (Symbol s : group) out.push_back(a.at(s));
    return out;
}

bool concave_ok(std::span<const Chord> chords) {
    try {
        return intersection_order_class(chords) == OrderClass::Concave;
    } catch (const InvalidInput&) {
        return false;
    }
}

bool wide_ok(std::span<const Chord> chords) {
    try {
        return is_wide(chords);
    } catch (const InvalidInput&) {
        return false;
    }
}

/// Scores integer endpoint positions (listed in eseq order) against the
/// group constraints without building rationals.
class Evaluator {
public:
    explicit Evaluator(const Config& cfg) : cfg_(cfg) {
        const std::size_t n = cfg.labels.size();
        lpos_.assign(n, 0);
        rpos_.assign(n, 0);
        for (std::size_t i = 0; i < cfg.eseq.size(); ++i) {
            const auto& t = cfg.eseq.tokens[i];
            (t.side == Side::L ? lpos_ : rpos_)[t.symbol] = i;
        }
        for (const auto& g : cfg.concave_groups) total_atoms_ += g.size() >= 3 ? g.size() - 2 : 0;
        for (const auto& g : cfg.wide_groups) total_atoms_ += g.size() >= 2 ? g.size() - 1 : 0;
    }

    std::size_t total_atoms() const { return total_atoms_; }
    /// Sum of clipped log-margins from the last score() call; only used to
    /// steer annealing.
    double soft() const { return soft_; }
    std::size_t total_groups() const { return cfg_.concave_groups.size() + cfg_.wide_groups.size(); }

    /// Returns the number of satisfied atoms; ok[g] per group.
    std::size_t score(const std::vector<mpz_class>& xs, bool* ok) {
        std::size_t atoms = 0;
        soft_ = 0;
        std::size_t g = 0;
        for (const auto& group : cfg_.concave_groups) {
            bool all = true;
            bool have_prev = false;
            for (std::size_t i = 0; i + 1 < group.size(); ++i) {
                crossing(xs, group[i], group[i + 1], num_, den_);
                if (have_prev) {
                    // num/den < prev_num/prev_den with positive denominators.
                    lhs_ = num_ * prev_den_;
                    rhs_ = prev_num_ * den_;
                    if (lhs_ < rhs_) ++atoms;
                    else all = false;
                    soft_ += crossing_margin(xs, group[i]);
                }
                std::swap(num_, prev_num_);
                std::swap(den_, prev_den_);
                have_prev = true;
            }
            ok[g++] = all;
        }
        for (const auto& group : cfg_.wide_groups) {
            bool all = true;
            const mpz_class& l1 = xs[lpos_[group.front()]];
            for (std::size_t k = 1; k < group.size(); ++k) {
                lhs_ = xs[rpos_[group[k]]] - l1;
                rhs_ = 2 * (xs[rpos_[group[k - 1]]] - l1);
                if (lhs_ > rhs_) ++atoms;
                else all = false;
                soft_ += soft_margin(rhs_, lhs_);
            }
            ok[g++] = all;
        }
        return atoms;
    }

    Assignment assignment(const std::vector<mpz_class>& xs) const {
        Assignment a(cfg_.labels.size());
        for (std::size_t s = 0; s < a.size(); ++s) a[s] = Chord{Rat(xs[lpos_[s]]), Rat(xs[rpos_[s]])};
        return a;
    }

private:
    // log2(big / small) capped above, so satisfied atoms stop pulling.
    static double soft_margin(const mpz_class& small, const mpz_class& big) {
        long es = 0, eb = 0;
        const double ms = mpz_get_d_2exp(&es, small.get_mpz_t());
        const double mb = mpz_get_d_2exp(&eb, big.get_mpz_t());
        const double m = static_cast<double>(eb - es) + std::log2(std::abs(mb) / std::abs(ms));
        return m > 0 ? std::min(m, 0.25) : m - 1.0;
    }

    static double log2_abs(const mpz_class& v) {
        long e = 0;
        const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
        return static_cast<double>(e) + std::log2(std::abs(m));
    }

    // Both crossings lie strictly between L and R of the middle chord.
    // Sum of log2 ratios of their distances to those two endpoints:
    // positive exactly when b∩c is left of a∩b.
    double crossing_margin(const std::vector<mpz_class>& xs, Symbol middle) {
        const mpz_class& l = xs[lpos_[middle]];
        const mpz_class& r = xs[rpos_[middle]];
        double m = 0;
        t1_ = prev_num_ - l * prev_den_;  // (x_ab - L) * den_ab
        t2_ = num_ - l * den_;            // (x_bc - L) * den_bc
        t3_ = r * den_ - num_;            // (R - x_bc) * den_bc
        t4_ = r * prev_den_ - prev_num_;  // (R - x_ab) * den_ab
        if (t1_ <= 0 || t2_ <= 0 || t3_ <= 0 || t4_ <= 0) return -2.0;
        m = log2_abs(t1_) - log2_abs(t2_) + log2_abs(t3_) - log2_abs(t4_);
        return m > 0 ? std::min(m, 0.25) : m - 1.0;
    }

    // Supporting lines y = (p+q)x - pq meet at x = (p2 q2 - p1 q1) / (p2 + q2 - p1 - q1).
    void crossing(const std::vector<mpz_class>& xs, Symbol s1, Symbol s2, mpz_class& num, mpz_class& den) {
        const mpz_class& p1 = xs[lpos_[s1]];
        const mpz_class& q1 = xs[rpos_[s1]];
        const mpz_class& p2 = xs[lpos_[s2]];
        const mpz_class& q2 = xs[rpos_[s2]];
        num = p2 * q2 - p1 * q1;
        den = p2 + q2 - p1 - q1;
    }

    const Config& cfg_;
    std::vector<std::size_t> lpos_;
    std::vector<std::size_t> rpos_;
    std::size_t total_atoms_ = 0;
    double soft_ = 0;
    mpz_class num_, den_, prev_num_, prev_den_, lhs_, rhs_, t1_, t2_, t3_, t4_;
};

constexpr std::uint64_t kChainLength = 500;

std::mt19937_64 unit_rng(std::uint64_t seed, Strategy s, std::uint64_t unit) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(unit),
                      static_cast<std::uint32_t>(unit >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

void uniform_gaps(std::mt19937_64& rng, std::vector<mpz_class>& gaps) {
    for (auto& g : gaps) g = static_cast<unsigned long>(uniform_int(rng, 1, 1000));
}

/// mantissa * 2^e with e following a random walk with a per-candidate drift,
/// so gaps can grow or shrink steadily along the endpoint order. One
/// candidate in three draws every exponent independently instead; the walk
/// alone correlates neighbouring gaps too strongly to hit some joint events.
void geometric_gaps(std::mt19937_64& rng, std::vector<mpz_class>& gaps) {
    if (uniform_int(rng, 0, 2) == 0) {
        for (auto& g : gaps) {
            g = static_cast<unsigned long>(uniform_int(rng, 1, 16));
            mpz_mul_2exp(g.get_mpz_t(), g.get_mpz_t(), static_cast<mp_bitcnt_t>(uniform_int(rng, 0, 30)));
        }
        return;
    }
    long e = static_cast<long>(uniform_int(rng, 0, 24));
    const long drift = static_cast<long>(uniform_int(rng, 0, 4)) - 2;
    const long step = static_cast<long>(uniform_int(rng, 0, 4));
    for (auto& g : gaps) {
        g = static_cast<unsigned long>(uniform_int(rng, 1, 16));
        mpz_mul_2exp(g.get_mpz_t(), g.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        e += drift + static_cast<long>(uniform_int(rng, 0, 2 * step)) - step;
        e = std::clamp(e, 0L, 60L);
    }
}

/// Gaps as 2^u with real exponents; annealing moves in u.
void gaps_from_log(const std::vector<double>& u, std::vector<mpz_class>& gaps) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        gaps[i] = std::max(1.0, std::round(std::exp2(u[i])));
    }
}

/// Moves one exponent, or shifts a whole run of them so nested structure
/// can be rescaled at once.
void perturb(std::mt19937_64& rng, std::vector<double>& u, double sigma) {
    std::normal_distribution<double> noise(0.0, sigma);
    const std::size_t i = uniform_int(rng, 0, u.size() - 1);
    switch (uniform_int(rng, 0, 2)) {
        case 0: u[i] += noise(rng); break;
        case 1: {
            const std::size_t j = uniform_int(rng, 0, u.size() - 1);
            const double d = noise(rng);
            for (std::size_t k = std::min(i, j); k <= std::max(i, j); ++k) u[k] += d;
            break;
        }
        default: {
            const std::size_t j = uniform_int(rng, 0, u.size() - 1);
            u[i] += noise(rng);
            u[j] += noise(rng);
            break;
        }
    }
    for (auto& x : u) x = std::clamp(x, 0.0, 60.0);
}

void positions_from_gaps(const std::vector<mpz_class>& gaps, std::vector<mpz_class>& xs) {
    mpz_class acc = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        acc += gaps[i];
        xs[i] = acc;
    }
}

struct UnitResult {
    std::size_t best_atoms = 0;
    std::size_t best_groups = 0;
    std::uint64_t trials = 0;
    bool found = false;
    std::uint64_t found_at = 0;
    std::vector<mpz_class> witness;
};

class StrategyRun {
public:
    StrategyRun(const Config& cfg, const SearchOptions& opts, Strategy s, std::uint64_t share)
        : cfg_(cfg), opts_(opts), strategy_(s), share_(share) {}

    StrategyStats run(SearchReport& report) {
        const std::uint64_t unit_size = strategy_ == Strategy::Anneal ? kChainLength : 1;
        const std::uint64_t units = (share_ + unit_size - 1) / unit_size;
        results_.assign(units, {});
        next_unit_ = 0;
        first_found_ = units;

        const unsigned jobs = std::max(1u, opts_.jobs);
        auto worker = [&] {
            Evaluator eval(cfg_);
            for (;;) {
                const std::uint64_t u = next_unit_.fetch_add(1);
                if (u >= units || u > first_found_.load()) break;
                const std::uint64_t begin = u * unit_size;
                const std::uint64_t count = std::min(unit_size, share_ - begin);
                results_[u] = run_unit(eval, u, begin, count);
                if (results_[u].found) {
                    std::uint64_t cur = first_found_.load();
                    while (u < cur && !first_found_.compare_exchange_weak(cur, u)) {
                    }
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        StrategyStats stats{strategy_, 0, 0, 0};
        const std::uint64_t cutoff = std::min<std::uint64_t>(first_found_.load(), units ? units - 1 : 0);
        for (std::uint64_t u = 0; u < units && u <= cutoff; ++u) {
            const auto& r = results_[u];
            stats.trials += r.trials;
            stats.best_atoms = std::max(stats.best_atoms, r.best_atoms);
            stats.best_groups = std::max(stats.best_groups, r.best_groups);
            if (r.found) {
                report.witness = Evaluator(cfg_).assignment(r.witness);
                report.found_by = strategy_;
                report.found_at = r.found_at;
                break;
            }
        }
        return stats;
    }

private:
    UnitResult run_unit(Evaluator& eval, std::uint64_t unit, std::uint64_t begin, std::uint64_t count) {
        UnitResult res;
        auto rng = unit_rng(opts_.seed, strategy_, unit);
        const std::size_t n = cfg_.eseq.size();
        const std::size_t groups = eval.total_groups();
        std::vector<mpz_class> gaps(n), xs(n);
        auto ok = std::make_unique<bool[]>(std::max<std::size_t>(groups, 1));

        auto evaluate = [&](std::uint64_t trial) {
            positions_from_gaps(gaps, xs);
            const std::size_t atoms = eval.score(xs, ok.get());
            const std::size_t good = static_cast<std::size_t>(std::count(ok.get(), ok.get() + groups, true));
            ++res.trials;
            res.best_atoms = std::max(res.best_atoms, atoms);
            res.best_groups = std::max(res.best_groups, good);
            if (opts_.observer) {
                const Assignment a = eval.assignment(xs);
                TrialEvent ev{strategy_, trial, &a, std::span<const bool>(ok.get(), groups), atoms};
                std::lock_guard lock(observer_mutex_);
                opts_.observer(ev);
            }
            if (good == groups) {
                res.found = true;
                res.found_at = trial;
                res.witness = xs;
            }
            return atoms;
        };

        switch (strategy_) {
            case Strategy::Uniform:
                uniform_gaps(rng, gaps);
                evaluate(begin);
                break;
            case Strategy::Geometric:
                geometric_gaps(rng, gaps);
                evaluate(begin);
                break;
            case Strategy::Anneal: {
                // Start near equal spacing and let the gaps spread out.
                std::normal_distribution<double> start(24.0, 2.0);
                std::vector<double> u(n), cur_u;
                for (auto& x : u) x = std::clamp(start(rng), 0.0, 60.0);
                gaps_from_log(u, gaps);
                evaluate(begin);
                double cur = eval.soft();
                cur_u = u;
                std::uniform_real_distribution<double> coin(0.0, 1.0);
                for (std::uint64_t k = 1; k < count && !res.found; ++k) {
                    const double t = static_cast<double>(k) / static_cast<double>(count);
                    u = cur_u;
                    perturb(rng, u, 3.0 * std::pow(0.05, t));
                    gaps_from_log(u, gaps);
                    evaluate(begin + k);
                    const double next = eval.soft();
                    const double temp = 1.0 * std::pow(0.01, t);
                    if (next >= cur || coin(rng) < std::exp((next - cur) / temp)) {
                        cur = next;
                        cur_u = u;
                    }
                }
                break;
            }
        }
        return res;
    }

    const Config& cfg_;
    const SearchOptions& opts_;
    Strategy strategy_;
    std::uint64_t share_;
    std::vector<UnitResult> results_;
    std::atomic<std::uint64_t> next_unit_{0};
    std::atomic<std::uint64_t> first_found_{0};
    std::mutex observer_mutex_;
};

}  // namespace

const char* to_string(GroupKind k) { return k == GroupKind::Concave ? "concave" : "wide"; }

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Uniform: return "uniform";
        case Strategy::Geometric: return "geometric";
        case Strategy::Anneal: return "anneal";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "uniform") return Strategy::Uniform;
    if (name == "geometric") return Strategy::Geometric;
    if (name == "anneal") return Strategy::Anneal;
    throw InvalidInput("unknown strategy '" + std::string(name) + "'");
}

Verdict assign_check(const Config& cfg, const Assignment& a) {
    if (a.size() != cfg.labels.size())
        throw InvalidInput("assignment covers " + std::to_string(a.size()) + " segments, configuration has " +
                           std::to_string(cfg.labels.size()));
    std::vector<Rat> all;
    all.reserve(2 * a.size());
    for (const auto& c : a) {
        all.push_back(c.p);
        all.push_back(c.q);
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw InvalidInput("two endpoints share the x-coordinate " + to_string(*std::adjacent_find(all.begin(), all.end())));

    Verdict v;
    const Rat* prev = nullptr;
    for (std::size_t i = 0; i < cfg.eseq.size(); ++i) {
        const auto& t = cfg.eseq.tokens[i];
        const Rat& x = t.side == Side::L ? a[t.symbol].p : a[t.symbol].q;
        if (prev && !(*prev < x)) {
            v.order_failure = i;
            return v;
        }
        prev = &x;
    }
    v.order_ok = true;
    for (std::size_t g = 0; g < cfg.concave_groups.size(); ++g)
        v.groups.push_back({g, GroupKind::Concave, concave_ok(group_chords(a, cfg.concave_groups[g]))});
    for (std::size_t g = 0; g < cfg.wide_groups.size(); ++g)
        v.groups.push_back({g, GroupKind::Wide, wide_ok(group_chords(a, cfg.wide_groups[g]))});
    for (std::size_t i = 0; i < v.groups.size(); ++i)
        if (!v.groups[i].satisfied) {
            v.first_violation = i;
            break;
        }
    return v;
}

Assignment assignment_from_positions(const Config& cfg, std::span<const Rat> xs) {
    if (xs.size() != cfg.eseq.size()) throw InvalidInput("need one x-value per endpoint");
    Assignment a(cfg.labels.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& t = cfg.eseq.tokens[i];
        (t.side == Side::L ? a[t.symbol].p : a[t.symbol].q) = xs[i];
    }
    return a;
}

nlohmann::json assignment_to_json(const Config& cfg, const Assignment& a) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t s = 0; s < a.size(); ++s) j[cfg.labels.at(s)] = {to_string(a[s].p), to_string(a[s].q)};
    return j;
}

Assignment assignment_from_json(const Config& cfg, const nlohmann::json& j) {
    Assignment a(cfg.labels.size());
    std::vector<bool> seen(a.size(), false);
    try {
        for (const auto& [label, pair] : j.items()) {
            const Symbol s = cfg.symbol(label);
            a[s] = Chord{parse_rat(pair.at(0).get<std::string>()), parse_rat(pair.at(1).get<std::string>())};
            seen[s] = true;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed assignment JSON: ") + e.what());
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
        if (!seen[s]) throw InvalidInput("assignment is missing segment " + cfg.labels[s]);
    return a;
}

std::uint64_t SearchReport::trials() const {
    std::uint64_t t = 0;
    for (const auto& s : stats) t += s.trials;
    return t;
}

nlohmann::json SearchReport::to_json(const Config& cfg) const {
    nlohmann::json j;
    j["found"] = witness.has_value();
    j["trials"] = trials();
    j["total_atoms"] = total_atoms;
    j["total_groups"] = total_groups;
    auto arr = nlohmann::json::array();
    for (const auto& s : stats)
        arr.push_back({{"strategy", to_string(s.strategy)},
                       {"trials", s.trials},
                       {"best_atoms", s.best_atoms},
                       {"best_groups", s.best_groups}});
    j["strategies"] = arr;
    if (witness) {
        j["found_by"] = to_string(*found_by);
        j["found_at"] = found_at;
        j["witness"] = assignment_to_json(cfg, *witness);
    }
    return j;
}

SearchReport search(const Config& cfg, const SearchOptions& opts) {
    if (opts.budget < 1) throw InvalidInput("search budget must be at least 1");
    if (opts.strategies.empty()) throw InvalidInput("search needs at least one strategy");
    validate_config(cfg);

    SearchReport report;
    Evaluator probe(cfg);
    report.total_atoms = probe.total_atoms();
    report.total_groups = probe.total_groups();

    const std::uint64_t k = opts.strategies.size();
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t share = opts.budget / k + (i < opts.budget % k ? 1 : 0);
        if (share == 0 || report.witness) {
            report.stats.push_back({opts.strategies[i], 0, 0, 0});
            continue;
        }
        StrategyRun run(cfg, opts, opts.strategies[i], share);
        report.stats.push_back(run.run(report));
    }
    if (report.witness && !assign_check(cfg, *report.witness).ok())
        throw std::logic_error("search produced a witness that fails the exact check");
    return report;
}

std::optional<Assignment> search_realization(const Config& cfg, std::uint64_t budget, std::uint64_t seed) {
    SearchOptions opts;
    opts.budget = budget;
    opts.seed = seed;
    return search(cfg, opts).witness;
}

DescentResult wide_descent(const Config& cfg, const Assignment& a) {
    const Verdict v = assign_check(cfg, a);
    if (!v.order_ok) throw InvalidInput("assignment does not follow the endpoint order");
    if (!cfg.root) throw InvalidInput("configuration has no whisker tree");
    for (std::size_t w = 0; w < cfg.whiskers.size(); ++w)
        if (!concave_ok(group_chords(a, cfg.whiskers[w])))
            throw InvalidInput("whisker " + std::to_string(w + 1) + " is not concave");

    DescentResult res;
    TreeRef at = *cfg.root;
    while (!at.leaf) {
        const WhiskerNode& node = cfg.tree.at(at.index);
        const auto& w = cfg.whiskers.at(node.whisker);
        if (w.size() != 3 || node.children.size() != 2)
            throw InvalidInput("descent needs three-segment whiskers with two children");
        const Chord &ca = a[w[0]], &cb = a[w[1]], &cc = a[w[2]];
        const Rat alpha2 = cc.p - cb.p;
        const Rat gamma = ca.q - cc.p;
        const Rat beta1 = cb.q - ca.q;
        const Rat beta2 = cc.q - cb.q;
        int branch;
        if (alpha2 < gamma + beta1 + beta2) branch = 0;
        else if (beta1 < beta2) branch = 1;
        else throw std::logic_error("concave whisker violates the third ratio claim");
        res.path.push_back({node.whisker, branch});
        at = node.children[static_cast<std::size_t>(branch)];
    }
    res.numeric_group = at.index;
    return res;
}

bool Thm31Report::holds() const {
    return std::all_of(bounds.begin(), bounds.end(), [](bool b) { return b; }) && ps_eq_qr && p2s2_eq_q2r2 && chain;
}

nlohmann::json Thm31Report::to_json() const {
    nlohmann::json j;
    auto arr = [](const std::array<Rat, 4>& v) {
        auto out = nlohmann::json::array();
        for (const auto& x : v) out.push_back(to_string(x));
        return out;
    };
    j["alpha"] = arr(alpha);
    j["beta"] = arr(beta);
    j["pqrs"] = {to_string(p), to_string(q), to_string(r), to_string(s)};
    j["pqrs_prime"] = {to_string(p2), to_string(q2), to_string(r2), to_string(s2)};
    j["bounds"] = bounds;
    j["ps_eq_qr"] = ps_eq_qr;
    j["ps_eq_qr_prime"] = p2s2_eq_q2r2;
    j["lhs"] = to_string(lhs);
    j["rhs"] = to_string(rhs);
    j["chain"] = chain;
    return j;
}

Thm31Report thm31_certificate(const Config& cfg, const Assignment& a) {
    const Verdict v = assign_check(cfg, a);
    if (!v.order_ok) throw InvalidInput("assignment does not follow the endpoint order");
    auto chord = [&](const char* label) -> const Chord& { return a[cfg.symbol(label)]; };
    const std::vector<Chord> w1{chord("8"), chord("1"), chord("2")};
    const std::vector<Chord> w2{chord("3"), chord("4"), chord("9")};
    if (!concave_ok(w1)) throw InvalidInput("whisker {8,1,2} is not concave");
    if (!concave_ok(w2)) throw InvalidInput("whisker {3,4,9} is not concave");

    Thm31Report r;
    const char* five[] = {"a", "b", "c", "d", "e"};
    for (std::size_t i = 0; i < 4; ++i) {
        r.alpha[i] = chord(five[i + 1]).p - chord(five[i]).p;
        r.beta[i] = chord(five[i + 1]).q - chord(five[i]).q;
    }
    const Chord &c1 = chord("1"), &c2 = chord("2"), &c3 = chord("3"), &c4 = chord("4");
    const Rat ax = line_intersection(c1, c2)->x;
    const Rat bx = line_intersection(c3, c4)->x;
    r.p = c2.p - c1.p;
    r.r = ax - c2.p;
    r.s = c1.q - ax;
    r.q = c2.q - c1.q;
    r.p2 = c4.p - c3.p;
    r.r2 = bx - c4.p;
    r.s2 = c3.q - bx;
    r.q2 = c4.q - c3.q;
    const auto& al = r.alpha;
    const auto& be = r.beta;
    r.bounds = {al[0] < r.p, al[1] > r.r, al[2] < r.s, al[3] > r.q,
                be[0] > r.p2, be[1] < r.r2, be[2] > r.s2, be[3] < r.q2};
    r.ps_eq_qr = r.p * r.s == r.q * r.r;
    r.p2s2_eq_q2r2 = r.p2 * r.s2 == r.q2 * r.r2;
    r.lhs = al[0] * al[2] * be[1] * be[3];
    r.rhs = al[1] * al[3] * be[0] * be[2];
    r.chain = r.lhs < r.rhs;
    return r;
}

Yf5Report yf5_certificate(const Config& cfg, const Assignment& a, std::size_t y_index) {
    const Verdict v = assign_check(cfg, a);
    if (!v.order_ok) throw InvalidInput("assignment does not follow the endpoint order");
    if (y_index >= cfg.y_groups.size() || y_index >= cfg.numeric_groups.size())
        throw InvalidInput("no Y copy with index " + std::to_string(y_index));
    const auto& group = cfg.numeric_groups[y_index];
    if (group.size() != 5) throw InvalidInput("the wrapped numeric group must have five segments");
    const auto f = group_chords(a, group);
    if (!wide_ok(f)) throw InvalidInput("numeric group is not wide");
    if (!concave_ok(f)) throw InvalidInput("numeric group is not concave");

    Yf5Report r;
    r.gap_first = f[1].p - f[0].p > f[4].p - f[1].p;
    r.gap_second = f[3].p - f[2].p > f[4].p - f[3].p;
    const auto y = group_chords(a, cfg.y_groups[y_index]);
    const Rat alpha2 = y[2].p - y[1].p;
    const Rat gamma = y[0].q - y[2].p;
    const Rat beta1 = y[1].q - y[0].q;
    const Rat beta2 = y[2].q - y[1].q;
    r.beta_order = beta1 > beta2;
    r.alpha_dominates = alpha2 > gamma + beta1 + beta2;
    r.claim3 = beta1 < beta2 || alpha2 < gamma + beta1 + beta2;
    r.def_concave = concave_ok(y);
    return r;
}

std::vector<std::size_t> certificate_preconditions(const Config& cfg) {
    const auto index_of = [&](const std::vector<std::vector<Symbol>>& groups, const std::vector<Symbol>& g,
                              std::size_t offset) -> std::size_t {
        const auto it = std::find(groups.begin(), groups.end(), g);
        if (it == groups.end()) throw InvalidInput("configuration lacks a group the certificate needs");
        return offset + static_cast<std::size_t>(it - groups.begin());
    };
    std::vector<std::size_t> out;
    if (cfg.kind == ConfigKind::Thm31) {
        for (const auto& w : cfg.whiskers) out.push_back(index_of(cfg.concave_groups, w, 0));
    } else if (!cfg.y_groups.empty() && !cfg.numeric_groups.empty() && !cfg.wide_groups.empty()) {
        const auto& g = cfg.numeric_groups.front();
        out.push_back(index_of(cfg.concave_groups, g, 0));
        out.push_back(index_of(cfg.wide_groups, g, cfg.concave_groups.size()));
    } else {
        throw InvalidInput(std::string("no certificate for configuration kind ") + to_string(cfg.kind));
    }
    return out;
}

Config precondition_config(const Config& cfg) {
    const auto pre = certificate_preconditions(cfg);
    Config out = cfg;
    out.concave_groups.clear();
    out.wide_groups.clear();
    for (std::size_t i : pre) {
        if (i < cfg.concave_groups.size()) out.concave_groups.push_back(cfg.concave_groups[i]);
        else out.wide_groups.push_back(cfg.wide_groups[i - cfg.concave_groups.size()]);
    }
    return out;
}

}  // namespace parazone
